from pydqc.core.study import Study
from pydqc.core import geometry, pipeline, parity, estimators, montecarlo
from pydqc import utils
