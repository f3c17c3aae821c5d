"""Exact verification toolkit for quantum loop algebra representations of
U_q(Lsl2): loop and Kac-Moody presentations, quantum Weyl group elements,
transfer-type matrix series and their rational forms, and the equivariant
K-theory eigenvalue calculus."""
from .kernels import BACKEND
from .scalar import (
    RationalField,
    ScalarQ,
    SymbolicField,
    SYMBOLIC,
    field_from_spec,
    parse_scalar,
    qbinom,
    qfactorial,
    qint,
    verify_qpascal_identities,
)

__version__ = "0.1.0"
