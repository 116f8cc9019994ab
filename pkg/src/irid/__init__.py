"""Impulse-response-invariant discretization of complex-order fractional
integrators: exact frequency/time-domain evaluation, FFT-based inverse
Laplace transform, Steiglitz-McBride rational fitting and an end-to-end
pipeline with comparison reports."""

from .cfoi import (CfoiParams, cfoi_analytic_impulse, cfoi_freq_grid,
                   cfoi_freq_response, cfoi_transfer, gamma_complex)
from .errors import (ConfigError, DegreeError, DenominatorZero, DomainError,
                     EvaluationError, GridMismatch, InsufficientData,
                     IoError, IridError, NonFiniteIterate, ParamError,
                     PipelineStageError, PoleAtMinusOne, SingularInput,
                     SingularSystem, ZeroMagnitude)
from .lti import (ContinuousTransferFunction, DiscreteTransferFunction,
                  FrequencyGrid, FrequencyResponseSeries, Polynomial,
                  TimeSeries, continuous_freq_response,
                  discrete_freq_response, discrete_impulse,
                  is_stable_discrete, poly_eval, poly_roots)
from .nilt import NiltConfig, nilt
from .pipeline import (ComparisonMetrics, IridRequest, IridResult,
                       ModelErrors, compare_frequency, compare_impulse,
                       format_summary, irid_fcoi, write_outputs)
from .sysid import FitConfig, bilinear_d2c, prony_init, stmcb_fit

__version__ = "0.1.0"
