#This file contains the counting model of the toric and rotated planar surface codes.
#No lattice is built, the estimators only consume counts.
import numbers
from dataclasses import dataclass, asdict

class DistanceError(ValueError):
    """Raised when a code distance is not a positive integer."""

class LayoutError(DistanceError):
    """Raised when the rotated planar layout is asked for an even distance."""

@dataclass(frozen=True)
class CodeCounts:
    """Qubit and stabilizer counts of a code at a given distance."""
    data_qubits: int
    logical_qubits: int
    x_stabilizers: int
    z_stabilizers: int
    independent_checks: int

    def asDict(self):
        return asdict(self)

def checkDistance(d,odd=False):
    """Use this function to validate a code distance and return it as an int.
    args:
    d: code distance
    odd: require an odd distance (rotated planar layout)
    """
    if isinstance(d,bool):
        raise DistanceError("d must be a positive integer, got {!r}".format(d))
    if not isinstance(d,numbers.Integral):
        if isinstance(d,numbers.Real) and float(d).is_integer():
            d = int(d)
        else:
            raise DistanceError("d must be a positive integer, got {!r}".format(d))
    d = int(d)
    if d < 1:
        raise DistanceError("d must be >= 1, got {}".format(d))
    if odd and d%2==0:
        raise LayoutError("rotated planar layout is only defined for odd d, got {}".format(d))
    return d

def toric_counts(d):
    """Use this function to get the toric code counts with L identified with d."""
    d = checkDistance(d)
    stabilizers = d*d
    #two global constraints, one per stabilizer type
    return CodeCounts(2*d*d,2,stabilizers,stabilizers,2*stabilizers-2)

def planar_counts(d):
    """Use this function to get the rotated planar surface code counts (odd d only)."""
    d = checkDistance(d,odd=True)
    checks = d*d-1
    return CodeCounts(d*d,1,checks//2,checks//2,checks)

def seam_qubit_count(d):
    """Use this function to get the physical qubits on one patch boundary, d data + d-1 syndrome."""
    d = checkDistance(d)
    return 2*d-1

def ghz_states_per_type(d,independent_generators_only=False):
    """Use this function to get the number of GHZ states one stabilizer type needs per round."""
    counts = toric_counts(d)
    if independent_generators_only:
        return counts.independent_checks//2
    return counts.x_stabilizers

def ghz_states_per_round(d,independent_generators_only=False):
    """Use this function to get the GHZ states for both stabilizer types in one round."""
    return 2*ghz_states_per_type(d,independent_generators_only)

def transversal_pairs(d):
    """One Bell pair per physical CNOT between corresponding data qubits of two blocks."""
    d = checkDistance(d)
    return d*d
