"""Reference-frame fields on Minkowski spacetime and rotating-platform experiments."""

__version__ = "0.1.0"

from .charts import Chart, Interval, SampleGrid
from .errors import (ChartMismatchError, ConfigError, DegreeError, DomainError,
                     FrameValidationError, FramelabError, NullRootError, QuadratureError,
                     SingularMetricError)
from .fields import ScalarField, constant, coordinate, coordinates
from .forms import PForm, exterior_derivative, hodge_star, wedge
from .frames import (FrameField, KinematicDecomposition, SynchronizabilityReport, adapted_coframe,
                     classify, diagonality_check, frobenius_obstruction, kinematic_decomposition,
                     make_frame, vortex_vector)
from .loops import LoopPath, circle, ellipse
from .tensors import (ChartMap, MetricField, Rank2Tensor, VectorField, christoffel,
                      covariant_derivative_oneform, lower_index, pullback_metric, raise_index)
