#This file contains the GHZ generation pipeline cost model:
#link generation -> optional 2->1 distillation -> fusion into two GHZ copies -> parity projection.
import math
from dataclasses import dataclass

class ProbabilityError(ValueError):
    """Raised when a probability is outside its allowed range."""

class InfiniteExpectationError(ProbabilityError):
    """Raised when a stage never succeeds, so the expected attempt count is infinite."""

class ProtocolError(ValueError):
    """Raised for unknown protocol names or inconsistent custom recipes."""

#name: (bell pairs per GHZ copy, uses distillation)
namedProtocols = {
    "Plain":(3,False),
    "Basic":(8,True),
    "Medium":(16,True),
    "Refined":(40,True),
}

@dataclass(frozen=True)
class GhzProtocol:
    """A GHZ recipe: Bell pairs per GHZ copy (n) and whether each pair is distilled 2->1."""
    name: str
    bell_pairs_per_copy: int
    uses_distillation: bool

    def __post_init__(self):
        if self.name in namedProtocols:
            if namedProtocols[self.name] != (self.bell_pairs_per_copy,self.uses_distillation):
                raise ProtocolError("{} is fixed to n={}, uses_distillation={}".format(self.name,*namedProtocols[self.name]))
        elif self.name != "Custom":
            raise ProtocolError("unknown protocol {!r}, options: {}".format(self.name,", ".join(list(namedProtocols)+["Custom"])))
        n = self.bell_pairs_per_copy
        if isinstance(n,bool) or not isinstance(n,int) or n < 1:
            raise ProtocolError("bell_pairs_per_copy must be an integer >= 1, got {!r}".format(n))
        if not isinstance(self.uses_distillation,bool):
            raise ProtocolError("uses_distillation must be true or false, got {!r}".format(self.uses_distillation))

    @classmethod
    def named(cls,name):
        """Use this function to get one of the Plain/Basic/Medium/Refined protocols."""
        key = str(name).capitalize()
        if key not in namedProtocols:
            raise ProtocolError("unknown protocol {!r}, options: {}".format(name,", ".join(namedProtocols)))
        n,distill = namedProtocols[key]
        return cls(key,n,distill)

    @classmethod
    def custom(cls,bell_pairs_per_copy,uses_distillation=False):
        return cls("Custom",bell_pairs_per_copy,uses_distillation)

    def asConfig(self):
        """Use this function to get the yaml representation of the protocol."""
        if self.name == "Custom":
            return {"name":self.name,"bell_pairs_per_copy":self.bell_pairs_per_copy,"uses_distillation":self.uses_distillation}
        return self.name

def getProtocol(value):
    """Use this function to build a protocol from a config value (name, mapping, or protocol)."""
    if isinstance(value,GhzProtocol):
        return value
    if isinstance(value,str):
        return GhzProtocol.named(value)
    if isinstance(value,dict):
        name = str(value.get("name","Custom")).capitalize()
        if name != "Custom":
            return GhzProtocol.named(name)
        if "bell_pairs_per_copy" not in value:
            raise ProtocolError("custom protocol requires bell_pairs_per_copy")
        return GhzProtocol.custom(value["bell_pairs_per_copy"],value.get("uses_distillation",False))
    raise ProtocolError("protocol must be a name or a mapping, got {!r}".format(value))

def checkProbability(value,name,allowZero=True):
    """Use this function to validate a probability and return it as a float."""
    try:
        value = float(value)
    except (TypeError,ValueError):
        raise ProbabilityError("{} must be a number, got {!r}".format(name,value))
    if math.isnan(value) or value < 0 or value > 1:
        raise ProbabilityError("{} must lie in [0,1], got {}".format(name,value))
    if not allowZero and value == 0:
        raise InfiniteExpectationError("{}=0 never succeeds, the expected number of attempts is infinite".format(name))
    return value

@dataclass(frozen=True)
class PipelineProbabilities:
    """Per-stage Bernoulli success probabilities."""
    p_link: float
    p_distill: float = 1.0
    p_parity: float = 1.0

    def __post_init__(self):
        for key in ("p_link","p_distill","p_parity"):
            object.__setattr__(self,key,checkProbability(getattr(self,key),key))

    def effectiveDistill(self,protocol):
        """Use this function to get p_distill, forced to 1 when the protocol does not distill."""
        return self.p_distill if protocol.uses_distillation else 1.0

    def checkFinite(self,protocol=None):
        """Use this function to reject any stage that never succeeds."""
        checkProbability(self.p_link,"p_link",allowZero=False)
        if protocol is None or protocol.uses_distillation:
            checkProbability(self.p_distill,"p_distill",allowZero=False)
        checkProbability(self.p_parity,"p_parity",allowZero=False)

def bell_pairs_per_accepted_ghz(protocol):
    """Use this function to get the 2n Bell pairs consumed per final GHZ (two copies), before retries."""
    return 2*protocol.bell_pairs_per_copy

def expected_attempts_per_ghz(protocol,probs):
    """Use this function to get R(n) = 2n/(p_link p_distill p_parity), p_distill=1 without distillation."""
    probs.checkFinite(protocol)
    return bell_pairs_per_accepted_ghz(protocol)/(probs.p_link*probs.effectiveDistill(protocol)*probs.p_parity)

def epl_distill_success(p_R):
    """Use this function to get the EPL distillation success p_R^2/2."""
    p_R = checkProbability(p_R,"p_R")
    return 0.5*p_R*p_R

def effective_link_probability(p_link,M):
    """Use this function to get the multiplexed link success 1-(1-p_link)^M for M parallel attempts."""
    p_link = checkProbability(p_link,"p_link")
    if isinstance(M,bool) or int(M) != M or M < 1:
        raise ValueError("M must be an integer >= 1, got {!r}".format(M))
    if M == 1:
        return p_link
    return 1.0-(1.0-p_link)**int(M)

def wall_clock_seconds(attempts,attempt_rate):
    """Use this function to convert attempts to mean wall-clock time at attempt_rate attempts per second."""
    if attempt_rate is None:
        return None
    attempt_rate = float(attempt_rate)
    if not attempt_rate > 0:
        raise ValueError("attempt_rate must be > 0, got {}".format(attempt_rate))
    return attempts/attempt_rate
