#This file contains the closed-form expected-attempt estimators of the three architectures.
#Type I: GHZ mediated stabilizer measurement on the toric code.
#Type II: two planar patches stitched along one seam.
#Type III: transversal CNOT, logical teleportation or lattice surgery between blocks.
import warnings
from dataclasses import dataclass, replace
import pydqc.core.geometry as geometry
import pydqc.core.pipeline as pipeline
import pydqc.core.parity as parity

architectureKinds = ("TypeI","TypeII","TypeIII")
type3Modes = ("TransversalCnot","Teleportation","LatticeSurgery")

class ArchitectureError(ValueError):
    """Raised when an estimator is called with a spec of the wrong kind or missing a component."""

@dataclass(frozen=True)
class EstimateResult:
    """Expected attempts of one estimator evaluation with the formula that produced it."""
    expected_attempts: float
    ghz_states_or_bell_pairs_needed: int
    formula_tag: str
    wall_clock_seconds: float = None

@dataclass(frozen=True)
class ArchitectureSpec:
    """Architecture selection with its distance, protocol and probability parameters."""
    kind: str
    d: int
    probs: pipeline.PipelineProbabilities
    protocol: pipeline.GhzProtocol = None
    symmetric_noise_p: float = None
    independent_generators_only: bool = False
    type3_mode: str = "TransversalCnot"
    attempt_rate: float = None
    multiplex_M: int = 1
    depolarizing_rates: parity.DepolarizingRates = None

    def __post_init__(self):
        if self.kind not in architectureKinds:
            raise ArchitectureError("kind must be one of {}, got {!r}".format(", ".join(architectureKinds),self.kind))
        object.__setattr__(self,"d",geometry.checkDistance(self.d))
        if self.kind == "TypeI" and self.protocol is None:
            raise ArchitectureError("TypeI requires a protocol")
        if self.type3_mode not in type3Modes:
            raise ArchitectureError("type3_mode must be one of {}, got {!r}".format(", ".join(type3Modes),self.type3_mode))
        if self.symmetric_noise_p is not None and self.depolarizing_rates is not None:
            raise ArchitectureError("give either symmetric_noise_p or depolarizing_rates, not both")
        if self.symmetric_noise_p is not None:
            pipeline.checkProbability(self.symmetric_noise_p,"symmetric_noise_p")
            if self.symmetric_noise_p > parity.maxPhysicalRate:
                warnings.warn("symmetric_noise_p={} is outside [0, 3/4].".format(self.symmetric_noise_p))
        pipeline.effective_link_probability(self.probs.p_link,self.multiplex_M) #validates M

    def noiseRates(self):
        """Use this function to get the depolarizing rates feeding p_parity, or None."""
        if self.depolarizing_rates is not None:
            return self.depolarizing_rates
        if self.symmetric_noise_p is not None:
            return parity.DepolarizingRates.symmetric(self.symmetric_noise_p)
        return None

    def resolvedProbabilities(self):
        """Use this function to apply noise -> p_parity, multiplexing -> p_link^eff and the distillation coercion."""
        probs = self.probs
        rates = self.noiseRates()
        if rates is not None:
            probs = replace(probs,p_parity=parity.parity_accept_probability(rates).accept_probability)
        if self.multiplex_M != 1:
            probs = replace(probs,p_link=pipeline.effective_link_probability(probs.p_link,self.multiplex_M))
        if self.protocol is not None and not self.protocol.uses_distillation:
            probs = replace(probs,p_distill=1.0)
        return probs

def requireKind(spec,kind):
    if spec.kind != kind:
        raise ArchitectureError("expected a {} spec, got {}".format(kind,spec.kind))

def ghzAttempts(spec):
    return pipeline.expected_attempts_per_ghz(spec.protocol,spec.resolvedProbabilities())

def linkProbability(spec):
    """Use this function to get the (possibly multiplexed) link probability for Type II/III."""
    p_link = spec.resolvedProbabilities().p_link
    pipeline.checkProbability(p_link,"p_link",allowZero=False)
    return p_link

def type1_attempts_per_type_round(spec):
    """Use this function to get N_type(d) = d^2 R(n), or (d^2-1) R(n) for independent generators only."""
    requireKind(spec,"TypeI")
    ghzStates = geometry.ghz_states_per_type(spec.d,spec.independent_generators_only)
    attempts = ghzStates*ghzAttempts(spec)
    tag = "N_type=(d^2-1)R(n)" if spec.independent_generators_only else "N_type=d^2 R(n)"
    return EstimateResult(attempts,ghzStates,tag,pipeline.wall_clock_seconds(attempts,spec.attempt_rate))

def type1_attempts_per_round(spec):
    """Use this function to get N_round(d) = 4 n d^2/(p_link p_distill p_parity), both stabilizer types."""
    requireKind(spec,"TypeI")
    ghzStates = geometry.ghz_states_per_round(spec.d,spec.independent_generators_only)
    attempts = ghzStates*ghzAttempts(spec)
    tag = "N_round=2(d^2-1)R(n)" if spec.independent_generators_only else "N_round=4nd^2/(p_link p_distill p_parity)"
    return EstimateResult(attempts,ghzStates,tag,pipeline.wall_clock_seconds(attempts,spec.attempt_rate))

def type2_attempts_per_type_round(d,p_link,attempt_rate=None):
    """Use this function to get the seam cost (2d-1)/p_link per stabilizer type per round."""
    pairs = geometry.seam_qubit_count(d)
    p_link = pipeline.checkProbability(p_link,"p_link",allowZero=False)
    attempts = pairs/p_link
    return EstimateResult(attempts,pairs,"(2d-1)/p_link",pipeline.wall_clock_seconds(attempts,attempt_rate))

def type3_attempts(spec):
    """Use this function to get the Bell-pair attempts of one Type III block operation."""
    requireKind(spec,"TypeIII")
    p_link = linkProbability(spec)
    if spec.type3_mode == "LatticeSurgery":
        #seam cost repeated over d merge rounds, constant borrowed from the Type II seam
        pairs = spec.d*geometry.seam_qubit_count(spec.d)
        tag = "d(2d-1)/p_link [lattice surgery: seam cost x d rounds, modeling choice]"
    else:
        pairs = geometry.transversal_pairs(spec.d)
        tag = "d^2/p_link"
    attempts = pairs/p_link
    return EstimateResult(attempts,pairs,tag,pipeline.wall_clock_seconds(attempts,spec.attempt_rate))

def estimate(spec,per_type=False):
    """Use this function to dispatch a spec to its estimator."""
    if spec.kind == "TypeI":
        return type1_attempts_per_type_round(spec) if per_type else type1_attempts_per_round(spec)
    if spec.kind == "TypeII":
        return type2_attempts_per_type_round(spec.d,linkProbability(spec),spec.attempt_rate)
    return type3_attempts(spec)

def analytic_round_attempts(spec):
    """Use this function to get the closed form that simulate_architecture_round estimates."""
    return estimate(spec,per_type=False).expected_attempts
