#This file contains the seeded Monte Carlo realizations of the retry pipelines.
#A trial costs link-generation attempts only; distillation and parity trials consume pairs
#that were already counted. The number of attempts needed to collect k successes at
#probability q is k + NegativeBinomial(k, q), which lets whole retry loops be drawn at once.
import math
from functools import partial
from dataclasses import dataclass
import numpy
from scipy import stats
import pydqc.core.geometry as geometry
import pydqc.core.pipeline as pipeline
import pydqc.core.parity as parity
import pydqc.core.process as process

maxSeed = 2**64-1

@dataclass(frozen=True)
class SimulationConfig:
    """Trial count, seed and reporting options of a Monte Carlo run."""
    trials: int
    seed: int = 0
    confidence_level: float = 0.99
    workers: int = 1
    block_size: int = 4096

    def __post_init__(self):
        for key,low in (("trials",1),("workers",1),("block_size",1),("seed",0)):
            value = getattr(self,key)
            if isinstance(value,bool) or int(value) != value or value < low:
                raise ValueError("{} must be an integer >= {}, got {!r}".format(key,low,value))
            object.__setattr__(self,key,int(value))
        if self.seed > maxSeed:
            raise ValueError("seed must fit in 64 bits, got {}".format(self.seed))
        if not 0 < self.confidence_level < 1:
            raise ValueError("confidence_level must lie in (0,1), got {}".format(self.confidence_level))

    def blocks(self):
        return process.getBlockBoundaries(self.trials,self.block_size)

@dataclass(frozen=True)
class AttemptStatistics:
    """Sample mean, standard error and normal-approximation confidence interval of attempt counts."""
    mean: float
    std_error: float
    ci_low: float
    ci_high: float
    trials: int

    def within(self,value,k=3.0):
        """Use this function to check |mean - value| <= k standard errors."""
        return abs(self.mean-value) <= k*self.std_error

def blockGenerator(seed,blockIndex):
    """Use this function to get the counter-based stream owned by one block of trials."""
    return numpy.random.Generator(numpy.random.Philox(numpy.random.SeedSequence(seed,spawn_key=(blockIndex,))))

def attemptsForSuccesses(rng,successes,q):
    """Use this function to draw the attempts needed to collect each entry of successes at probability q."""
    successes = numpy.asarray(successes,dtype=numpy.int64)
    attempts = successes.copy()
    mask = successes > 0
    if numpy.any(mask) and q < 1:
        attempts[mask] += rng.negative_binomial(successes[mask],q)
    return attempts

def ghzPipelineCosts(rng,protocol,probs,count,ghzStates=1):
    """Use this function to draw the link attempts of count trials, each needing ghzStates accepted GHZ states.
    Every parity attempt restarts both copies; with distillation the two copies need n distilled pairs
    and every distillation attempt consumes two fresh link successes.
    """
    accepted = numpy.full(count,ghzStates,dtype=numpy.int64)
    parityAttempts = attemptsForSuccesses(rng,accepted,probs.p_parity)
    n = protocol.bell_pairs_per_copy
    if protocol.uses_distillation:
        distillAttempts = attemptsForSuccesses(rng,parityAttempts*n,probs.p_distill)
        linkSuccesses = 2*distillAttempts
    else:
        linkSuccesses = 2*n*parityAttempts
    return attemptsForSuccesses(rng,linkSuccesses,probs.p_link)

def summarize(samples,confidence_level=0.99):
    """Use this function to reduce per-trial samples to AttemptStatistics with exactly rounded sums."""
    values = numpy.asarray(samples,dtype=numpy.float64).tolist()
    trials = len(values)
    mean = math.fsum(values)/trials
    if trials > 1:
        variance = math.fsum([(v-mean)**2 for v in values])/(trials-1)
    else:
        variance = 0.0
    stdError = math.sqrt(variance/trials)
    z = float(stats.norm.ppf(0.5+0.5*confidence_level))
    return AttemptStatistics(mean,stdError,mean-z*stdError,mean+z*stdError,trials)

def collect(blockFunction,config):
    """Use this function to run blockFunction over the configured blocks and concatenate the results."""
    results = process.runBlocks(blockFunction,config.blocks(),workers=config.workers)
    return numpy.concatenate(results)

#---------------------------------Block functions (module level so a Pool can pickle them)----------------

def ghzBlock(protocol,probs,seed,ghzStates,block):
    blockIndex,start,count = block
    return ghzPipelineCosts(blockGenerator(seed,blockIndex),protocol,probs,count,ghzStates)

def linkBlock(p_link,pairs,seed,block):
    blockIndex,start,count = block
    return attemptsForSuccesses(blockGenerator(seed,blockIndex),numpy.full(count,pairs,dtype=numpy.int64),p_link)

def parityBlock(rates,seed,block):
    blockIndex,start,count = block
    rng = blockGenerator(seed,blockIndex)
    weights = rates.pauliWeights()
    flips = numpy.zeros(count,dtype=numpy.int64)
    for site in range(parity.numberOfSites):
        labels = rng.choice(4,size=count,p=weights[site])
        flips += parity.zBits[labels]
    return (flips%2==0).astype(numpy.int64)

#---------------------------------Public operations-------------------------------------------------------

def sampleGhzPipeline(protocol,probs,config,ghzStates=1):
    """Use this function to get the raw per-trial attempts of the GHZ pipeline."""
    probs.checkFinite(protocol)
    if not protocol.uses_distillation:
        probs = pipeline.PipelineProbabilities(probs.p_link,1.0,probs.p_parity)
    if ghzStates == 0:
        return numpy.zeros(config.trials,dtype=numpy.int64)
    return collect(partial(ghzBlock,protocol,probs,config.seed,ghzStates),config)

def sampleLinks(p_link,pairs,config):
    """Use this function to get the raw per-trial attempts of pairs independent geometric link retries."""
    pipeline.checkProbability(p_link,"p_link",allowZero=False)
    return collect(partial(linkBlock,p_link,pairs,config.seed),config)

def simulate_ghz_pipeline(protocol,probs,config):
    """Use this function to estimate R(n) by simulating the full retry pipeline of one accepted GHZ."""
    return summarize(sampleGhzPipeline(protocol,probs,config),config.confidence_level)

def simulate_link(p_link,config):
    """Use this function to estimate the attempts of a single link, 1/p_link on average."""
    return summarize(sampleLinks(p_link,1,config),config.confidence_level)

def sampleTrials(spec,config):
    """Use this function to get the raw per-trial attempts of one architecture round/operation."""
    probs = spec.resolvedProbabilities()
    if spec.kind == "TypeI":
        ghzStates = geometry.ghz_states_per_round(spec.d,spec.independent_generators_only)
        return sampleGhzPipeline(spec.protocol,probs,config,ghzStates)
    if spec.kind == "TypeII":
        pairs = geometry.seam_qubit_count(spec.d)
    elif spec.type3_mode == "LatticeSurgery":
        pairs = spec.d*geometry.seam_qubit_count(spec.d)
    else:
        pairs = geometry.transversal_pairs(spec.d)
    return sampleLinks(probs.p_link,pairs,config)

def simulate_architecture_round(spec,config):
    """Use this function to estimate the closed form of a spec: Type I N_round, Type II seam, Type III block operation."""
    return summarize(sampleTrials(spec,config),config.confidence_level)

def sample_parity_projection(rates,config):
    """Use this function to estimate Pr(S=+1) by sampling Pauli errors from the depolarizing weights."""
    if not rates.isPhysical():
        raise ValueError("sampling needs rates in [0, 3/4], got {}".format(rates.asArray().tolist()))
    accepted = collect(partial(parityBlock,rates,config.seed),config)
    return math.fsum(accepted.tolist())/config.trials
