"""Backend selection for the hot loops.

The compiled module is used when it was built; setting ``GPF_PURE_PYTHON=1``
forces the pure-Python twin (handy for benchmarking and debugging).
"""

import os

if os.environ.get("GPF_PURE_PYTHON") == "1":
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
ipoly_mul = _impl.ipoly_mul
ipoly_eval_homog = _impl.ipoly_eval_homog
ipoly_primitive = _impl.ipoly_primitive
ipoly_prem = _impl.ipoly_prem
sturm_chain = _impl.sturm_chain
sign_variations = _impl.sign_variations
hyp2f1_fixed = _impl.hyp2f1_fixed

__all__ = [
    "BACKEND", "ipoly_mul", "ipoly_eval_homog", "ipoly_primitive", "ipoly_prem",
    "sturm_chain", "sign_variations", "hyp2f1_fixed",
]
