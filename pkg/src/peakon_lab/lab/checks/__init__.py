"""
Verification checks grouped into the constants, identities and inequalities suites.
"""

from .base import (
    SUITES,
    SUPPORTED_CHECKS,
    Check,
    CheckContext,
    CheckResult,
    checks_for,
    register_check,
    run_suite,
)
from .constants import PeakonConstantsCheck
from .identities import (
    GMomentCheck,
    H1ExpansionCheck,
    PeakonOdeCheck,
    PhiXXPairingCheck,
    ReproducingKernelCheck,
)
from .inequalities import (
    EnergyNormCheck,
    LyapunovCheck,
    MaxMuCheck,
    NormSandwichCheck,
    SharpMaxCheck,
    SobolevMaxCheck,
)

# Register supported checks
for _check in (
    PeakonConstantsCheck,
    H1ExpansionCheck,
    GMomentCheck,
    ReproducingKernelCheck,
    PeakonOdeCheck,
    PhiXXPairingCheck,
    LyapunovCheck,
    MaxMuCheck,
    NormSandwichCheck,
    SharpMaxCheck,
    SobolevMaxCheck,
    EnergyNormCheck,
):
    register_check(_check)

__all__ = [
    'SUITES',
    'SUPPORTED_CHECKS',
    'Check',
    'CheckContext',
    'CheckResult',
    'checks_for',
    'register_check',
    'run_suite',
    'PeakonConstantsCheck',
    'H1ExpansionCheck',
    'GMomentCheck',
    'ReproducingKernelCheck',
    'PeakonOdeCheck',
    'PhiXXPairingCheck',
    'LyapunovCheck',
    'MaxMuCheck',
    'NormSandwichCheck',
    'SharpMaxCheck',
    'SobolevMaxCheck',
    'EnergyNormCheck',
]
