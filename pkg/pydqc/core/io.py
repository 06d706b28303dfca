#This file contains configuration loading, console messaging and output writers.
import os, csv, json, warnings, yaml, numpy
from datetime import datetime
import pydqc.core.geometry as geometry
import pydqc.core.pipeline as pipeline
import pydqc.core.parity as parity
import pydqc.core.estimators as estimators
import pydqc.core.montecarlo as montecarlo
import pydqc.core.sweep as sweep
try:
    import h5py
except Exception as e:
    h5py = None

class ConfigError(ValueError):
    """Raised for a missing or invalid configuration field, the message names the field."""
    def __init__(self,field,message):
        self.field = field
        super().__init__("{}: {}".format(field,message))

#section: known keys
configKeys = {
    "architecture":("kind","d","protocol","symmetric_noise_p","independent_generators_only","type3_mode","attempt_rate","multiplex_M","per_type"),
    "probabilities":("p_link","p_distill","p_parity","p_R","depolarizing_rates"),
    "sweep":("variable","values","protocols","p_links","recipe"),
    "simulation":("trials","seed","confidence_level","workers","block_size"),
}
defaultTrials = 100000

def loadConfig(fileName):
    """Use this function to read a yaml configuration file into a dictionary."""
    if not os.path.isfile(fileName):
        raise ConfigError("config","file not found: {}".format(fileName))
    with open(fileName,'r') as document:
        try:
            config = yaml.load(document,Loader=yaml.FullLoader)
        except yaml.YAMLError as e:
            raise ConfigError("config","cannot parse {}: {}".format(fileName,e))
    config = {} if config is None else config
    if not isinstance(config,dict):
        raise ConfigError("config","top level of {} must be a mapping".format(fileName))
    return config

def checkSections(config):
    """Use this function to reject unknown sections and keys."""
    for section,entries in config.items():
        if section not in configKeys:
            raise ConfigError(section,"unknown section, options: {}".format(", ".join(configKeys)))
        if entries is None:
            config[section] = entries = {}
        if not isinstance(entries,dict):
            raise ConfigError(section,"section must be a mapping")
        for key in entries:
            if key not in configKeys[section]:
                raise ConfigError("{}.{}".format(section,key),"unknown key")
    return config

def applyOverrides(config,overrides):
    """Use this function to apply --set key=value overrides, key bare or section qualified."""
    for override in overrides:
        if "=" not in override:
            raise ConfigError("--set","expected key=value, got {!r}".format(override))
        key,value = override.split("=",1)
        key = key.strip()
        if "." in key:
            section,key = key.split(".",1)
        else:
            sections = [s for s,keys in configKeys.items() if key in keys]
            if not sections:
                raise ConfigError(key,"unknown key in --set")
            section = sections[0]
        if section not in configKeys or key not in configKeys[section]:
            raise ConfigError("{}.{}".format(section,key),"unknown key in --set")
        try:
            parsed = yaml.safe_load(value)
        except yaml.YAMLError:
            raise ConfigError(key,"cannot parse value {!r}".format(value))
        if config.get(section) is None:
            config[section] = {}
        config[section][key] = parsed
    return config

def configField(field,function,*args,**kwargs):
    """Use this function to evaluate function and report any ValueError as a ConfigError naming field."""
    try:
        return function(*args,**kwargs)
    except ConfigError:
        raise
    except (ValueError,TypeError) as e:
        raise ConfigError(field,str(e))

def configFlag(field,value):
    """Use this function to accept only a yaml boolean for field."""
    if not isinstance(value,bool):
        raise ConfigError(field,"must be true or false, got {!r}".format(value))
    return value

def yamlManager(study):
    """Use this function to manage and assign all specified yaml variables to the study."""
    config = checkSections(study.yamlFile)
    def yamlGet(section,key,default=None):
        """Use this function to get arguments from the yaml sections."""
        entries = config.get(section) or {}
        return entries[key] if key in entries else default
    def yamlRequire(section,key):
        if yamlGet(section,key) is None:
            raise ConfigError(key,"required field is missing from [{}]".format(section))
        return yamlGet(section,key)
    #Sweep information decides which fields may be left to the sweep
    variable = yamlGet("sweep","variable")
    values = yamlGet("sweep","values")
    protocols = yamlGet("sweep","protocols") or []
    p_links = yamlGet("sweep","p_links") or []
    hasSweep = "sweep" in config and (variable is not None or values is not None)
    if hasSweep and variable is None:
        raise ConfigError("variable","required field is missing from [sweep]")
    if hasSweep and not isinstance(values,(list,tuple)):
        raise ConfigError("values","must be a non-empty list")
    if hasSweep and not values:
        raise ConfigError("values","must not be empty")
    sweptFirst = lambda name: values[0] if hasSweep and variable == name else None
    #Setting architecture kind
    kind = yamlRequire("architecture","kind")
    if kind not in estimators.architectureKinds:
        raise ConfigError("kind","must be one of {}, got {!r}".format(", ".join(estimators.architectureKinds),kind))
    #Setting distance
    d = yamlGet("architecture","d",sweptFirst("distance"))
    if d is None:
        raise ConfigError("d","required field is missing from [architecture]")
    d = configField("d",geometry.checkDistance,d)
    #Setting protocol, TypeI only
    protocol = yamlGet("architecture","protocol")
    protocols = [configField("protocols",pipeline.getProtocol,p) for p in protocols]
    if protocol is not None:
        protocol = configField("protocol",pipeline.getProtocol,protocol)
    elif kind == "TypeI":
        if not protocols:
            raise ConfigError("protocol","required field is missing from [architecture] for TypeI")
        protocol = protocols[0]
    #Setting probabilities
    p_link = yamlGet("probabilities","p_link",sweptFirst("p_link"))
    if p_link is None and p_links:
        p_link = p_links[0]
    if p_link is None:
        raise ConfigError("p_link","required field is missing from [probabilities]")
    p_link = configField("p_link",pipeline.checkProbability,p_link,"p_link")
    p_distill = yamlGet("probabilities","p_distill")
    p_R = yamlGet("probabilities","p_R")
    if p_R is not None:
        if p_distill is not None:
            raise ConfigError("p_R","give either p_R or p_distill, not both")
        p_distill = configField("p_R",pipeline.epl_distill_success,p_R)
    p_distill = 1.0 if p_distill is None else configField("p_distill",pipeline.checkProbability,p_distill,"p_distill")
    p_parity = yamlGet("probabilities","p_parity")
    #Setting noise
    noise = yamlGet("architecture","symmetric_noise_p",sweptFirst("noise_p"))
    if noise is not None:
        noise = configField("symmetric_noise_p",pipeline.checkProbability,noise,"symmetric_noise_p")
    rates = yamlGet("probabilities","depolarizing_rates")
    if rates is not None:
        if not isinstance(rates,dict) or set(rates) != {"p_A","p_B"}:
            raise ConfigError("depolarizing_rates","needs exactly the keys p_A and p_B")
        rates = configField("depolarizing_rates",parity.DepolarizingRates,tuple(rates["p_A"]),tuple(rates["p_B"]))
    if (noise is not None or rates is not None) and p_parity is not None:
        warnings.warn("p_parity={} is overridden by the configured depolarizing noise.".format(p_parity))
    p_parity = 1.0 if p_parity is None else configField("p_parity",pipeline.checkProbability,p_parity,"p_parity")
    if yamlGet("architecture","protocol") is not None and not protocol.uses_distillation and p_distill != 1.0:
        warnings.warn("p_distill={} is ignored by {}, which does not distill.".format(p_distill,protocol.name))
    probs = pipeline.PipelineProbabilities(p_link,p_distill,p_parity)
    multiplex = yamlGet("architecture","multiplex_M",sweptFirst("multiplex_M"))
    multiplex = 1 if multiplex is None else multiplex
    configField("multiplex_M",pipeline.effective_link_probability,p_link,multiplex)
    attemptRate = yamlGet("architecture","attempt_rate")
    if attemptRate is not None:
        configField("attempt_rate",pipeline.wall_clock_seconds,1.0,attemptRate)
    #Setting architecture
    study.spec = configField("architecture",estimators.ArchitectureSpec,kind,d,probs,
        protocol=protocol if kind == "TypeI" else None,
        symmetric_noise_p=noise,
        independent_generators_only=configFlag("independent_generators_only",yamlGet("architecture","independent_generators_only",False)),
        type3_mode=yamlGet("architecture","type3_mode","TransversalCnot"),
        attempt_rate=attemptRate,
        multiplex_M=int(multiplex),
        depolarizing_rates=rates)
    study.perType = configFlag("per_type",yamlGet("architecture","per_type",False))
    #Setting sweep
    study.sweep = None
    if hasSweep:
        study.sweep = configField("sweep",sweep.SweepSpec,variable,tuple(values),study.spec,tuple(protocols),tuple(p_links))
    #Setting simulation
    study.simulation = configField("simulation",montecarlo.SimulationConfig,
        trials=yamlGet("simulation","trials",defaultTrials),
        seed=yamlGet("simulation","seed",0),
        confidence_level=yamlGet("simulation","confidence_level",0.99),
        workers=yamlGet("simulation","workers",1),
        block_size=yamlGet("simulation","block_size",4096))

def resolvedConfig(study):
    """Use this function to serialize the resolved study back to the yaml layout."""
    spec = study.spec
    architecture = {"kind":spec.kind,"d":spec.d,"independent_generators_only":spec.independent_generators_only,
        "type3_mode":spec.type3_mode,"multiplex_M":spec.multiplex_M,"per_type":study.perType}
    if spec.protocol is not None:
        architecture["protocol"] = spec.protocol.asConfig()
    if spec.symmetric_noise_p is not None:
        architecture["symmetric_noise_p"] = spec.symmetric_noise_p
    if spec.attempt_rate is not None:
        architecture["attempt_rate"] = spec.attempt_rate
    probabilities = {"p_link":spec.probs.p_link,"p_distill":spec.probs.p_distill,"p_parity":spec.probs.p_parity}
    if spec.depolarizing_rates is not None:
        probabilities["depolarizing_rates"] = {"p_A":list(spec.depolarizing_rates.p_A),"p_B":list(spec.depolarizing_rates.p_B)}
    sim = study.simulation
    config = {"architecture":architecture,"probabilities":probabilities,
        "simulation":{"trials":sim.trials,"seed":sim.seed,"confidence_level":sim.confidence_level,"workers":sim.workers,"block_size":sim.block_size}}
    if study.sweep is not None:
        config["sweep"] = study.sweep.asConfig()
    return config

def dumpConfig(study,fileName):
    with open(fileName,'w') as f:
        yaml.dump(resolvedConfig(study),f,default_flow_style=False)

#---------------------------------Messaging-----------------------------------------------------------

def verbosePrint(study,outString):
    """Use this function to print only when verbose option is specified."""
    if study.verbose and study.masterBool:
        print(outString)

def masterPrint(study,outString):
    """Use this function to print on the master rank."""
    if study.masterBool:
        print(outString)

def getStudyPrint(study):
    spec = study.spec
    probs = spec.resolvedProbabilities()
    returnString = "\npydqc study properties:\n"
    returnString += "\tarchitecture: {}\n".format(spec.kind)
    returnString += "\tdistance: {}\n".format(spec.d)
    if spec.protocol is not None:
        returnString += "\tprotocol: {} (n={}, distillation: {})\n".format(spec.protocol.name,spec.protocol.bell_pairs_per_copy,spec.protocol.uses_distillation)
    if spec.kind == "TypeIII":
        returnString += "\ttype III mode: {}\n".format(spec.type3_mode)
    returnString += "\tp_link (stored, resolved): ({}, {})\n".format(spec.probs.p_link,probs.p_link)
    if spec.kind == "TypeI":
        returnString += "\tp_distill: {}\n".format(probs.p_distill)
        returnString += "\tp_parity: {}\n".format(probs.p_parity)
    if spec.symmetric_noise_p is not None:
        returnString += "\tsymmetric noise p: {}\n".format(spec.symmetric_noise_p)
    if spec.multiplex_M != 1:
        returnString += "\tmultiplexing M: {}\n".format(spec.multiplex_M)
    if spec.independent_generators_only:
        returnString += "\tindependent generators only: True\n"
    if study.sweep is not None:
        returnString += "\tsweep: {} over {}\n".format(study.sweep.variable,list(study.sweep.values))
    sim = study.simulation
    returnString += "\ttrials, seed: ({}, {})\n".format(sim.trials,sim.seed)
    returnString += "\tworkers, block size: ({}, {})\n".format(sim.workers,sim.block_size)
    try:
        returnString += "\tnumber of processes: {}\n".format(study.comm.Get_size())
    except Exception as e:
        pass
    return returnString

#---------------------------------Log file-----------------------------------------------------------

def getShortEntry(study,command,clocktime):
    """Use this function for a condensed yaml entry."""
    spec = study.spec
    rundata = {"command":command,"runtime":float(clocktime),"kind":spec.kind,"d":spec.d,
        "protocol":spec.protocol.name if spec.protocol is not None else None,
        "trials":study.simulation.trials,"seed":study.simulation.seed}
    return {datetime.now().strftime("%m/%d/%Y-%H:%M:%S"):rundata}

def updateLogFile(study,command,clocktime,fileName='log.yaml'):
    """Use this function to update the yaml run log."""
    previous = {}
    if os.path.isfile(fileName):
        with open(fileName,'r') as f:
            previous = yaml.load(f,Loader=yaml.FullLoader) or {}
    previous.update(getShortEntry(study,command,clocktime))
    with open(fileName,'w') as f:
        yaml.dump(previous,f)

#---------------------------------Output writers-----------------------------------------------------

def checkOutput(fileName,force=False):
    """Use this function to refuse overwriting an existing output without force."""
    if fileName is not None and os.path.exists(fileName) and not force:
        raise FileExistsError("{} exists, use --force to overwrite".format(fileName))

def formatCell(value):
    if value is None:
        return ""
    if isinstance(value,float):
        return repr(value)
    return str(value)

def writeCsv(fileName,rows):
    """Use this function to write rows with the fixed header, floats in round-trip precision."""
    with open(fileName,'w',newline='') as f:
        writer = csv.writer(f,lineterminator='\n')
        writer.writerow(sweep.csvColumns)
        for row in rows:
            writer.writerow([formatCell(row[column]) for column in sweep.csvColumns])

def writeJson(fileName,rows):
    """Use this function to write one json record per row with the csv field names."""
    with open(fileName,'w') as f:
        json.dump([{column:row[column] for column in sweep.csvColumns} for row in rows],f,indent=2)
        f.write("\n")

writers = {"csv":writeCsv,"json":writeJson}

def writeRows(fileName,rows,fileFormat="csv"):
    if fileFormat not in writers:
        raise ConfigError("--format","must be one of {}, got {!r}".format(", ".join(writers),fileFormat))
    writers[fileFormat](fileName,rows)

def formatRows(rows):
    """Use this function to render rows as csv text for the console."""
    lines = [",".join(sweep.csvColumns)]
    for row in rows:
        lines.append(",".join(formatCell(row[column]) for column in sweep.csvColumns))
    return "\n".join(lines)

def writeSamples(fileName,points,config):
    """Use this function to archive raw per-trial attempt counts, one group per point.
    points: list of (row, samples) pairs
    """
    if h5py is None:
        raise ConfigError("--samples","h5py is not installed")
    with h5py.File(fileName,'w') as hdf5:
        hdf5.create_dataset("seed",(1,),data=(numpy.uint64(config.seed),))
        hdf5.create_dataset("trials",(1,),data=(config.trials,))
        hdf5.create_dataset("block_size",(1,),data=(config.block_size,))
        for i,(row,samples) in enumerate(points):
            group = hdf5.create_group("point{}".format(i))
            group.create_dataset("data",data=numpy.asarray(samples,dtype=numpy.int64))
            for column,value in row.items():
                if value is not None:
                    group.attrs[column] = value
