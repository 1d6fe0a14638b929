"""Embedding Z_r.PSL_n(q) into the wreath product Z_r wr PSL_n(q)."""

from .embed import (SUITE, CohomologyReport, EmbeddingCertificate, NotFound, ObstructionCertificate,
                    ProblemInstance, Verdict, arithmetic_decide, build_cover, cohomology_report,
                    construct_embedding, cross_validate, make_instance, obstruction_witness)
from .errors import BudgetExceeded, CertificateError, CoverWreathError, InvalidInstance
from .ff import Field
from .grp import GroupCtx

__version__ = "0.1.0"

__all__ = [
    "SUITE", "BudgetExceeded", "CertificateError", "CohomologyReport", "CoverWreathError",
    "EmbeddingCertificate", "Field", "GroupCtx", "InvalidInstance", "NotFound",
    "ObstructionCertificate", "ProblemInstance", "Verdict", "arithmetic_decide", "build_cover",
    "cohomology_report", "construct_embedding", "cross_validate", "make_instance",
    "obstruction_witness",
]
