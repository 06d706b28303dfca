#This file contains the self checks behind the validate command:
#closed-form acceptance vs the exhaustive oracle, the two sign rules, the series bound,
#and Monte Carlo means vs their closed forms.
from dataclasses import dataclass
import numpy
import pydqc.core.pipeline as pipeline
import pydqc.core.parity as parity
import pydqc.core.estimators as estimators
import pydqc.core.montecarlo as montecarlo

symmetricGrid = [0.0,0.001,0.01,0.05,0.1,0.25,0.5,0.75]
seriesGrid = [1e-4,1e-3,1e-2]
randomVectors = 50
oracleTolerance = 1e-12
standardErrors = 4.0

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float

    def __str__(self):
        return "{} {}: deviation={!r} tolerance={!r}".format("PASS" if self.passed else "FAIL",self.name,self.deviation,self.tolerance)

def closedFormAccept(rates):
    return parity.parity_accept_probability(rates).accept_probability

def randomRates(seed,count=randomVectors):
    """Use this function to draw seeded asymmetric rate vectors in [0, 3/4]."""
    rng = numpy.random.default_rng(seed)
    vectors = rng.uniform(0.0,parity.maxPhysicalRate,size=(count,parity.numberOfSites))
    return [parity.DepolarizingRates(tuple(v[:4]),tuple(v[4:])) for v in vectors]

def checkOracle(rateList,acceptFormula=None):
    """Use this function to compare acceptFormula against the exhaustive enumeration."""
    acceptFormula = acceptFormula or closedFormAccept
    results = []
    for name,rates in rateList:
        deviation = abs(parity.exhaustive_parity_accept(rates)-acceptFormula(rates))
        results.append(CheckResult("oracle {}".format(name),deviation <= oracleTolerance,deviation,oracleTolerance))
    return results

def checkSignRules():
    patterns = parity.errorPatterns()
    mismatches = int(numpy.count_nonzero(parity.parity_signs("zeta",patterns) != parity.parity_signs("conjugation",patterns)))
    return [CheckResult("zeta rule vs conjugation over {} patterns".format(len(patterns)),mismatches == 0,float(mismatches),0.0)]

def checkSeries():
    results = []
    for p in seriesGrid:
        deviation = abs(parity.symmetric_accept_probability(p)-parity.series_approx_accept(p))
        bound = parity.series_error_bound(p)
        results.append(CheckResult("series p={!r}".format(p),deviation <= bound,deviation,bound))
    return results

def monteCarloMatrix():
    """Use this function to get the (name, spec, ghzOnly) cells checked against their closed forms.
    ghzOnly cells compare one accepted GHZ against R(n).
    """
    cells = []
    for name in pipeline.namedProtocols:
        protocol = pipeline.GhzProtocol.named(name)
        for p_link in (0.3,0.5):
            for p in (0.0,0.01):
                probs = pipeline.PipelineProbabilities(p_link,0.5)
                spec = estimators.ArchitectureSpec("TypeI",1,probs,protocol=protocol,symmetric_noise_p=p)
                cells.append(("ghz {} p_link={} p={}".format(name,p_link,p),spec,True))
    for d in (3,11):
        for p_link in (0.1,0.5):
            spec = estimators.ArchitectureSpec("TypeII",d,pipeline.PipelineProbabilities(p_link))
            cells.append(("TypeII d={} p_link={}".format(d,p_link),spec,False))
    for d in (3,7):
        for p_link in (0.25,0.5):
            spec = estimators.ArchitectureSpec("TypeIII",d,pipeline.PipelineProbabilities(p_link))
            cells.append(("TypeIII d={} p_link={}".format(d,p_link),spec,False))
    return cells

def checkMonteCarlo(cells,config):
    results = []
    for name,spec,ghzOnly in cells:
        if ghzOnly:
            probs = spec.resolvedProbabilities()
            analytic = pipeline.expected_attempts_per_ghz(spec.protocol,probs)
            statistics = montecarlo.simulate_ghz_pipeline(spec.protocol,probs,config)
        else:
            analytic = estimators.analytic_round_attempts(spec)
            statistics = montecarlo.simulate_architecture_round(spec,config)
        deviation = abs(statistics.mean-analytic)
        tolerance = standardErrors*statistics.std_error
        results.append(CheckResult("monte carlo {}".format(name),deviation <= tolerance,deviation,tolerance))
    return results

def validateAll(config,spec=None,acceptFormula=None,monteCarlo=True):
    """Use this function to run every suite and return the list of CheckResult.
    args:
    config: SimulationConfig for the Monte Carlo suite and the random rate vectors
    spec: optional configured ArchitectureSpec, its noise and its round are checked too
    acceptFormula: closed-form acceptance under test, closedFormAccept by default
    monteCarlo: run the Monte Carlo suite
    """
    rateList = [("symmetric p={!r}".format(p),parity.DepolarizingRates.symmetric(p)) for p in symmetricGrid]
    rateList += [("random vector {}".format(i),rates) for i,rates in enumerate(randomRates(config.seed))]
    if spec is not None and spec.noiseRates() is not None:
        rateList.append(("configured rates",spec.noiseRates()))
    results = checkOracle(rateList,acceptFormula)
    results += checkSignRules()
    results += checkSeries()
    if monteCarlo:
        cells = monteCarloMatrix()
        if spec is not None:
            cells.append(("configured {} d={}".format(spec.kind,spec.d),spec,False))
        results += checkMonteCarlo(cells,config)
    return results

def allPassed(results):
    return all(result.passed for result in results)
