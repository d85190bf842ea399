"""1D viscoelastic blood-flow solver.

Augmented (area, flow, pressure) system closed by a standard-linear-solid
tube law, solved with a third-order asymptotic-preserving IMEX Runge-Kutta
finite-volume scheme: WENO3 reconstruction, path-conservative DOT
fluctuations, exact per-cell pressure relaxation, Windkessel outflow.
"""

from .boundary import (BoundaryMode, InletWaveform, RcrCircuit, fill_ghosts,
                       inlet_state, outlet_state)
from .constitutive import (MMHG, CellState, Eigenstructure, Regime, VesselKind,
                           WallModel, area_from_pressure, celerity,
                           classify_regime, eigenstructure, elastic_pressure,
                           invariant_integral, kv_pressure, perturbed_pressure,
                           quasilinear_matrix, relaxation_modulus,
                           riemann_invariants, sls_source, strain,
                           transport_coeff)
from .dot_solver import Fluctuations, InterfaceState, dot_fluctuations
from .errors import (ConvergenceError, DomainError, ModelError, ParameterError,
                     PositivityError)
from .imex import (ImexTableau, StepControls, compute_dt, imex_step,
                   limit_step_elastic, limit_step_diffusive)
from .mesh import (FieldSet, Grid1D, RegionSpec, SmoothSpec, init_from_piecewise,
                   init_smooth_periodic, make_well_prepared)
from .nondim import (CharacteristicScales, from_dimensionless,
                     scales_from_initial, to_dimensionless, wall_reynolds)
from .reconstruction import FacePair, reconstruct, reconstruct_field, weno3
from .simulation import Engine, run

__version__ = "0.1.0"
