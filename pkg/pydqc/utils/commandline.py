#This file contains the pydqc command line: estimate, sweep, simulate and validate.
import sys, argparse, warnings
import pydqc.core.io as io
import pydqc.core.sweep as sweep
import pydqc.core.montecarlo as montecarlo
import pydqc.utils.generateInput as generateInput
import pydqc.utils.validate as validate
from pydqc.core.study import Study

exitSuccess = 0
exitCheckFailure = 1
exitUsage = 2

def makeStudy(args):
    """Use this function to build the study from --config, --recipe and --set."""
    study = Study(yamlFileName=args.config,overrides=args.set or (),recipe=args.recipe,verbose=args.verbose)
    return study.withSimulation(trials=args.trials,seed=args.seed,workers=args.workers)

def writeOutput(flag,fileName,function,*args):
    """Use this function to run a writer and report an OSError as a ConfigError naming flag."""
    try:
        function(*args)
    except OSError as e:
        raise io.ConfigError(flag,"cannot write {}: {}".format(fileName,e.strerror or e))

def finish(study,args,command,rows=None):
    """Use this function to write rows, the resolved config and the log entry on the master rank."""
    if not study.masterBool:
        return
    if rows is not None:
        if args.out is not None:
            writeOutput("--out",args.out,io.writeRows,args.out,rows,args.format)
            io.verbosePrint(study,"wrote {} rows to {}".format(len(rows),args.out))
        else:
            print(io.formatRows(rows))
    if args.dump_config is not None:
        writeOutput("--dump-config",args.dump_config,io.dumpConfig,study,args.dump_config)
    if args.log is not None:
        writeOutput("--log",args.log,io.updateLogFile,study,command,study.elapsed(),args.log)

def runEstimate(args):
    """Use this function to print the closed-form estimate of the configured point."""
    io.checkOutput(args.out,args.force)
    study = makeStudy(args)
    result = study.estimate()
    io.masterPrint(study,str(study))
    io.masterPrint(study,"formula: {}".format(result.formula_tag))
    io.masterPrint(study,"expected attempts: {!r}".format(result.expected_attempts))
    io.masterPrint(study,"ghz states or bell pairs needed: {}".format(result.ghz_states_or_bell_pairs_needed))
    if result.wall_clock_seconds is not None:
        io.masterPrint(study,"wall clock seconds: {!r}".format(result.wall_clock_seconds))
    finish(study,args,"estimate",[sweep.makeRow(study.spec,result)])
    return exitSuccess

def runSweep(args):
    """Use this function to evaluate every point of the configured sweep or recipe."""
    io.checkOutput(args.out,args.force)
    study = makeStudy(args)
    if study.sweep is None:
        raise io.ConfigError("sweep","no [sweep] section and no --recipe given")
    io.verbosePrint(study,str(study))
    finish(study,args,"sweep",study.rows(simulate=args.simulate))
    return exitSuccess

def runSimulate(args):
    """Use this function to run the Monte Carlo harness for the configured point or sweep."""
    io.checkOutput(args.out,args.force)
    io.checkOutput(args.samples,args.force)
    study = makeStudy(args)
    io.verbosePrint(study,str(study))
    if args.samples is not None:
        points = study.samples()
        rows = [row for row,samples in points]
        if study.masterBool:
            writeOutput("--samples",args.samples,io.writeSamples,args.samples,points,study.simulation)
    else:
        rows = study.rows(simulate=True)
    finish(study,args,"simulate",rows)
    return exitSuccess

def runValidate(args):
    """Use this function to run the self checks, exit status 1 when any check fails."""
    if args.config is None and args.recipe is None and not args.set:
        config = io.configField("simulation",montecarlo.SimulationConfig,
            trials=args.trials if args.trials is not None else io.defaultTrials,
            seed=args.seed if args.seed is not None else 0,
            workers=args.workers if args.workers is not None else 1)
        results = validate.validateAll(config)
        master = True
    else:
        study = makeStudy(args)
        results = study.validate()
        master = study.masterBool
        finish(study,args,"validate")
    if master:
        for result in results:
            print(str(result))
        print("{} of {} checks passed".format(sum(r.passed for r in results),len(results)))
    return exitSuccess if validate.allPassed(results) else exitCheckFailure

functionMap = {"estimate":runEstimate,"sweep":runSweep,"simulate":runSimulate,"validate":runValidate}

#flags shared by every subcommand, accepted before or after it
commonDefaults = {"config":None,"recipe":None,"set":[],"seed":None,"trials":None,"workers":None,"out":None,
    "format":"csv","force":False,"dump_config":None,"log":None,"ignore":False,"verbose":False}

def commonArguments():
    parser = argparse.ArgumentParser(add_help=False,argument_default=argparse.SUPPRESS)
    parser.add_argument("-c","--config",type=str,help="This specifies the yaml configuration file.")
    parser.add_argument("--recipe",choices=generateInput.recipes,type=str,help="This loads a named figure recipe, values in --config and --set are laid over it.")
    parser.add_argument("--set",action="append",metavar="KEY=VALUE",help="This overrides a configuration key, bare (d=5) or qualified (architecture.d=5).")
    parser.add_argument("--seed",type=int,help="This specifies the 64 bit Monte Carlo seed.")
    parser.add_argument("--trials",type=int,help="This specifies the number of Monte Carlo trials.")
    parser.add_argument("--workers",type=int,help="This specifies the process pool size, results do not depend on it.")
    parser.add_argument("-o","--out",type=str,help="This specifies the output file, rows go to stdout otherwise.")
    parser.add_argument("--format",choices=io.writers,type=str,help="This specifies the output format (default csv).")
    parser.add_argument("--force",action="store_true",help="Overwrite existing output files.")
    parser.add_argument("--dump-config",type=str,help="This writes the resolved configuration as yaml.")
    parser.add_argument("--log",type=str,help="This appends a run entry to the given yaml log.")
    parser.add_argument("--ignore",action="store_true",help="Ignore warnings with this option.")
    parser.add_argument("-v","--verbose",action="store_true",help="Enable verbose output.")
    return parser

def buildParser():
    common = commonArguments()
    parser = argparse.ArgumentParser(prog="pydqc",parents=[common],description="Entanglement overheads of distributed fault tolerant architectures.")
    subparsers = parser.add_subparsers(dest="command",required=True)
    subparsers.add_parser("estimate",parents=[common],help="Closed-form estimate of the configured point.")
    sweepParser = subparsers.add_parser("sweep",parents=[common],help="Closed-form sweep, csv rows per point.")
    sweepParser.add_argument("--simulate",action="store_true",help="Fill the simulated columns with Monte Carlo results.")
    simulateParser = subparsers.add_parser("simulate",parents=[common],help="Monte Carlo statistics per point.")
    simulateParser.add_argument("--samples",default=None,type=str,help="This archives the raw per-trial attempts to an hdf5 file.")
    subparsers.add_parser("validate",parents=[common],help="Oracle, sign rule, series and Monte Carlo self checks.")
    return parser

def commandLine(argv=None):
    """Use this function to run pydqc from the commandline, returns the exit status."""
    parser = buildParser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    for key,value in commonDefaults.items():
        if not hasattr(args,key):
            setattr(args,key,list(value) if isinstance(value,list) else value)
    if args.ignore:
        warnings.filterwarnings('ignore')
    try:
        return functionMap[args.command](args)
    except (ValueError,FileExistsError) as e:
        print("pydqc {}: error: {}".format(args.command,e),file=sys.stderr)
        return exitUsage

if __name__ == "__main__":
    sys.exit(commandLine())
