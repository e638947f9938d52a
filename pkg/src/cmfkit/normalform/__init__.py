from .lmatrix import LaurentMatrix, NormalFormError, PrecisionExhausted
from .blocks import (
    AInfBlock,
    AInfCertificate,
    BLOCK_ONE,
    BLOCK_ONET,
    BLOCK_T,
    DInfBlock,
    DInfCertificate,
    ainf_block_matrices,
    dinf_block_diagonal,
    hook,
)
from .dinf import default_prec as dinf_default_prec
from .dinf import dinf_reduce, dinf_validate
from .ainf import ainf_reduce, ainf_validate
from .bridge import (
    FreeModuleMarker,
    ainf_block_to_mf,
    classify_ainf,
    classify_dinf,
    dinf_block_to_mf,
    hook_module_generators,
)

__all__ = [
    "AInfBlock",
    "AInfCertificate",
    "BLOCK_ONE",
    "BLOCK_ONET",
    "BLOCK_T",
    "DInfBlock",
    "DInfCertificate",
    "FreeModuleMarker",
    "LaurentMatrix",
    "NormalFormError",
    "PrecisionExhausted",
    "ainf_block_matrices",
    "ainf_block_to_mf",
    "ainf_reduce",
    "ainf_validate",
    "classify_ainf",
    "classify_dinf",
    "dinf_block_diagonal",
    "dinf_block_to_mf",
    "dinf_default_prec",
    "dinf_reduce",
    "dinf_validate",
    "hook",
    "hook_module_generators",
]
