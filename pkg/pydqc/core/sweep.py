#This file contains the sweep description and the row records written by the command line tools.
from dataclasses import dataclass, replace
import pydqc.core.pipeline as pipeline
import pydqc.core.estimators as estimators

sweepVariables = ("distance","noise_p","p_link","multiplex_M")
csvColumns = ("kind","protocol","d","p","p_link","p_distill","p_parity","analytic_attempts","simulated_mean","simulated_stderr")

@dataclass(frozen=True)
class SweepSpec:
    """A one-variable sweep over a fixed architecture template.
    protocols (TypeI) and p_links add outer families, rows are ordered protocol, p_link, value.
    """
    variable: str
    values: tuple
    fixed: estimators.ArchitectureSpec
    protocols: tuple = ()
    p_links: tuple = ()

    def __post_init__(self):
        if self.variable not in sweepVariables:
            raise ValueError("variable must be one of {}, got {!r}".format(", ".join(sweepVariables),self.variable))
        values = tuple(self.values) if self.values is not None else ()
        if not values:
            raise ValueError("values must not be empty")
        if any(b <= a for a,b in zip(values,values[1:])):
            raise ValueError("values must be strictly increasing, got {}".format(list(values)))
        if self.variable == "noise_p" and self.fixed.kind != "TypeI":
            raise ValueError("variable noise_p only applies to TypeI, kind is {}".format(self.fixed.kind))
        if self.variable in ("distance","multiplex_M"):
            if any(isinstance(v,bool) or int(v) != v or v < 1 for v in values):
                raise ValueError("{} values must be integers >= 1, got {}".format(self.variable,list(values)))
            values = tuple(int(v) for v in values)
        else:
            values = tuple(float(v) for v in values)
            for v in values:
                if self.variable == "p_link":
                    pipeline.checkProbability(v,"p_link",allowZero=False)
                else:
                    pipeline.checkProbability(v,"noise_p")
        object.__setattr__(self,"values",values)
        object.__setattr__(self,"protocols",tuple(pipeline.getProtocol(p) for p in self.protocols))
        if self.protocols and self.fixed.kind != "TypeI":
            raise ValueError("protocols only apply to TypeI sweeps")
        object.__setattr__(self,"p_links",tuple(pipeline.checkProbability(p,"p_links",allowZero=False) for p in self.p_links))
        if self.p_links and self.variable == "p_link":
            raise ValueError("p_links families cannot be combined with a p_link sweep")

    def withValue(self,spec,value):
        """Use this function to set the swept variable on spec."""
        if self.variable == "distance":
            return replace(spec,d=value)
        if self.variable == "noise_p":
            return replace(spec,symmetric_noise_p=value,depolarizing_rates=None)
        if self.variable == "p_link":
            return replace(spec,probs=replace(spec.probs,p_link=value))
        return replace(spec,multiplex_M=value)

    def points(self):
        """Use this function to get every ArchitectureSpec of the sweep in row order."""
        protocols = self.protocols if self.protocols else (self.fixed.protocol,)
        p_links = self.p_links if self.p_links else (self.fixed.probs.p_link,)
        specs = []
        for protocol in protocols:
            for p_link in p_links:
                base = replace(self.fixed,protocol=protocol,probs=replace(self.fixed.probs,p_link=p_link))
                specs.extend(self.withValue(base,value) for value in self.values)
        return specs

    def asConfig(self):
        config = {"variable":self.variable,"values":list(self.values)}
        if self.protocols:
            config["protocols"] = [p.asConfig() for p in self.protocols]
        if self.p_links:
            config["p_links"] = list(self.p_links)
        return config

def makeRow(spec,result=None,statistics=None):
    """Use this function to build one CsvRow record, None marks an absent value."""
    probs = spec.resolvedProbabilities()
    typeI = spec.kind == "TypeI"
    noise = spec.symmetric_noise_p if typeI else None
    return {
        "kind":spec.kind,
        "protocol":spec.protocol.name if typeI else None,
        "d":spec.d,
        "p":noise,
        "p_link":probs.p_link,
        "p_distill":probs.p_distill if typeI else None,
        "p_parity":probs.p_parity if typeI else None,
        "analytic_attempts":result.expected_attempts if result is not None else None,
        "simulated_mean":statistics.mean if statistics is not None else None,
        "simulated_stderr":statistics.std_error if statistics is not None else None,
    }
