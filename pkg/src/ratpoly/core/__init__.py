from __future__ import annotations

__all__ = [
    "Certificate",
    "CertificateKind",
    "FeasibilityResult",
    "Feasible",
    "HRep",
    "InCone",
    "Infeasible",
    "Invalid",
    "Membership",
    "Row",
    "SeparationResult",
    "Separated",
    "Valid",
    "ValidityResult",
    "VRep",
    "caratheodory_reduce",
    "contains",
    "feasible",
    "feasible_standard_form",
    "is_valid",
    "separate_from_cone",
    "verify_infeasibility",
    "verify_separation",
    "verify_standard_form_infeasibility",
    "verify_validity",
]

from ratpoly.core.farkas import (
    caratheodory_reduce,
    contains,
    feasible,
    feasible_standard_form,
    is_valid,
    separate_from_cone,
    verify_infeasibility,
    verify_separation,
    verify_standard_form_infeasibility,
    verify_validity,
)
from ratpoly.core.model import (
    Certificate,
    CertificateKind,
    FeasibilityResult,
    Feasible,
    HRep,
    InCone,
    Infeasible,
    Invalid,
    Membership,
    Row,
    SeparationResult,
    Separated,
    Valid,
    ValidityResult,
    VRep,
)
