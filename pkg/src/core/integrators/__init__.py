from core.integrators.bars import BarCoefficients, midpoint_bars
from core.integrators.dgp import dgp_step
from core.integrators.discrete_gradient import (classical_dg_step,
                                                transformed_dg_step)
from core.integrators.driver import integrate
from core.integrators.explicit import ExplicitODE, transform_to_explicit
from core.integrators.midpoint import implicit_midpoint_step
from core.integrators.radau import radau5_step
from core.integrators.schemes import SchemeConfig
