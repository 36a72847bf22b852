from .cohomology import Cochain1, Cochain2, H2Structure, bockstein, cup, h1, h2, transgression
from .descent import OmegaElement, delta, grt_check, verify_main_theorem
from .errors import ConfigError, Descent3Error, GroupSpecError, OrderCapError, PreconditionError
from .extensions import CentralExtension, baer_sum, from_cocycle, omega_catalog, to_cocycle
from .groups import FiniteGroup, GroupHom, Subgroup, make_group
from .series import CentralSeries, q_central_series, w_quotient

__all__ = [
    "CentralExtension",
    "CentralSeries",
    "Cochain1",
    "Cochain2",
    "ConfigError",
    "Descent3Error",
    "FiniteGroup",
    "GroupHom",
    "GroupSpecError",
    "H2Structure",
    "OmegaElement",
    "OrderCapError",
    "PreconditionError",
    "Subgroup",
    "baer_sum",
    "bockstein",
    "cup",
    "delta",
    "from_cocycle",
    "grt_check",
    "h1",
    "h2",
    "make_group",
    "omega_catalog",
    "q_central_series",
    "to_cocycle",
    "transgression",
    "verify_main_theorem",
    "w_quotient",
]
