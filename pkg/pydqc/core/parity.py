#This file contains the parity-projection acceptance of one GHZ_4 copy (A) onto another (B)
#under independent single-qubit depolarizing noise applied immediately before the CNOT layer
#CNOT(A_i -> B_i), followed by X measurements of A. Phases are dropped throughout, only X/Z bits are tracked.
import math, warnings, enum
from dataclasses import dataclass
import numpy

maxPhysicalRate = 0.75
numberOfSites = 8 #two copies of four qubits
flipFactor = 4.0/3.0

class PauliLabel(enum.Enum):
    """Single-qubit Pauli label with its (x, z) bits, Y = X.Z."""
    I = (0,0)
    X = (1,0)
    Y = (1,1)
    Z = (0,1)

    @property
    def x(self):
        return self.value[0]

    @property
    def z(self):
        return self.value[1]

    @classmethod
    def fromBits(cls,x,z):
        return cls((int(x)&1,int(z)&1))

#Enumeration order used for label indices in arrays
pauliOrder = (PauliLabel.I,PauliLabel.X,PauliLabel.Y,PauliLabel.Z)
xBits = numpy.array([label.x for label in pauliOrder],dtype=numpy.int8)
zBits = numpy.array([label.z for label in pauliOrder],dtype=numpy.int8)

@dataclass(frozen=True)
class DepolarizingRates:
    """Depolarizing parameters of the eight qubits, copy A qubits 1..4 and copy B qubits 1..4."""
    p_A: tuple
    p_B: tuple

    def __post_init__(self):
        for key in ("p_A","p_B"):
            rates = tuple(float(r) for r in getattr(self,key))
            if len(rates) != 4:
                raise ValueError("{} needs four rates, got {}".format(key,len(rates)))
            if any(math.isnan(r) for r in rates):
                raise ValueError("{} contains NaN".format(key))
            object.__setattr__(self,key,rates)
        if not self.isPhysical():
            warnings.warn("depolarizing rates outside [0, 3/4] do not define a channel: {}".format(self.asArray().tolist()))

    @classmethod
    def symmetric(cls,p):
        """Use this function to give all eight qubits the same rate."""
        return cls((p,)*4,(p,)*4)

    @classmethod
    def single(cls,p,site=0):
        """Use this function to set one qubit to rate p and the other seven to zero (sites 0-3 A, 4-7 B)."""
        rates = [0.0]*numberOfSites
        rates[site] = p
        return cls(tuple(rates[:4]),tuple(rates[4:]))

    def asArray(self):
        """Use this function to get the eight rates in site order A1..A4,B1..B4."""
        return numpy.array(self.p_A+self.p_B,dtype=numpy.float64)

    def isPhysical(self):
        rates = self.asArray()
        return bool(numpy.all((rates >= 0) & (rates <= maxPhysicalRate)))

    def pauliWeights(self):
        """Use this function to get the (8,4) table of I,X,Y,Z probabilities per site."""
        rates = self.asArray()
        return numpy.stack((1-rates,rates/3,rates/3,rates/3),axis=1)

@dataclass(frozen=True)
class ParityOutcome:
    """Parity moment E[S] and acceptance probability Pr(S=+1)."""
    moment: float
    accept_probability: float

def flip_probability(p):
    """Use this function to get the probability that a depolarized qubit flips the recorded parity."""
    return 2.0*p/3.0

def parity_moment(rates):
    """Use this function to get E[S], the product of (1 - 4/3 p) over the eight qubits."""
    moment = 1.0
    for rate in rates.p_A+rates.p_B:
        moment *= (3.0-4.0*rate)/3.0
    return moment

def parity_accept_probability(rates):
    """Use this function to get Pr(S=+1) = (1+E[S])/2."""
    moment = parity_moment(rates)
    return ParityOutcome(moment,0.5*(1.0+moment))

def symmetric_accept_probability(p):
    """Use this function to get 1/2[1+(1-4p/3)^8] when every qubit has rate p."""
    return 0.5*(1.0+((3.0-4.0*p)/3.0)**numberOfSites)

def series_approx_accept(p):
    """Use this function to get the quadratic truncation 1 - 16p/3 + 224p^2/9."""
    return 1.0-16.0*p/3.0+224.0*p*p/9.0

#cubic coefficient of the symmetric acceptance expansion, -28(4/3)^3
seriesCubicBound = 28*flipFactor**3
#|exact - series| <= seriesBoundConstant p^3 for p <= 0.01
seriesBoundConstant = 67

def series_error_bound(p):
    return seriesBoundConstant*p**3

def errorPatterns():
    """Use this function to get every Pauli error pattern on the eight qubits as a (4^8,8) label-index array."""
    return numpy.indices((4,)*numberOfSites,dtype=numpy.int8).reshape(numberOfSites,-1).T.copy()

def zetaSigns(patterns):
    """Use this function to get S for each pattern, each qubit with a Z component contributes -1."""
    flips = numpy.sum(zBits[patterns],axis=1)
    return numpy.where(flips%2==0,1,-1).astype(numpy.int8)

def cnot_conjugate(pauli_on_control,pauli_on_target):
    """Use this function to conjugate a two-qubit Pauli through CNOT(control -> target), phase dropped.
    X on the control copies to the target and Z on the target copies to the control.
    """
    xc,zc = pauli_on_control.value
    xt,zt = pauli_on_target.value
    return PauliLabel.fromBits(xc,zc^zt),PauliLabel.fromBits(xt^xc,zt)

def teleported_cnot_error_map(bell_error):
    """Use this function to get where a Bell-pair error lands in a teleported CNOT.
    The Z component goes to the control, the X component to the target.
    """
    return PauliLabel.fromBits(0,bell_error.z),PauliLabel.fromBits(bell_error.x,0)

def conjugatedParityObservable():
    """Use this function to get U^dag M_A U for M_A = prod X_{A_i} as (x, z) bits in site order A1..A4,B1..B4."""
    x = numpy.zeros(numberOfSites,dtype=numpy.int8)
    z = numpy.zeros(numberOfSites,dtype=numpy.int8)
    for i in range(4):
        control,target = cnot_conjugate(PauliLabel.X,PauliLabel.I)
        x[i],z[i] = control.value
        x[i+4],z[i+4] = target.value
    return x,z

def conjugationSigns(patterns):
    """Use this function to get S for each pattern by testing anticommutation with the conjugated observable."""
    x,z = conjugatedParityObservable()
    #symplectic product of the error with the observable
    overlap = numpy.sum(xBits[patterns]*z+zBits[patterns]*x,axis=1)
    return numpy.where(overlap%2==0,1,-1).astype(numpy.int8)

def parity_signs(method="zeta",patterns=None):
    """Use this function to get per-pattern parity signs with the zeta rule or full conjugation."""
    patterns = errorPatterns() if patterns is None else patterns
    methods = {"zeta":zetaSigns,"conjugation":conjugationSigns}
    if method not in methods:
        raise ValueError("method must be one of {}, got {!r}".format(list(methods),method))
    return methods[method](patterns)

def patternWeights(rates,patterns):
    """Use this function to get the probability of each error pattern."""
    table = rates.pauliWeights()
    return numpy.prod(table[numpy.arange(numberOfSites),patterns],axis=1)

def exhaustive_parity_accept(rates,method="zeta"):
    """Use this function to compute Pr(S=+1) exactly by summing the weight of all 4^8 even-parity patterns."""
    patterns = errorPatterns()
    weights = patternWeights(rates,patterns)
    signs = parity_signs(method,patterns)
    return math.fsum(weights[signs > 0].tolist())
