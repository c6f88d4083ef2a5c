"""Expression-evaluation kernel with a compiled core and a pure fallback.

The hot path of the whole package is evaluating a flattened expression
program (value or one dual-number sweep per coordinate) inside Newton
iterations inside adaptive quadrature. `_speedups` is a Cython build of
that stack machine; `_pykernel` is the reference implementation in plain
Python with identical semantics. Selection happens once at import:

* default: compiled if the extension was built, else pure;
* MPKIT_KERNEL=pure|compiled forces a backend (compiled raises if missing).
"""

import os
from dataclasses import dataclass, field

import numpy as np

# opcodes shared by both backends; arg meaning in comments
OP_CONST = 0  # arg: index into consts
OP_VAR = 1  # arg: input index
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_POW = 6  # general power, exponent on stack; base must be > 0
OP_POWI = 7  # arg: integer exponent; base may be any real
OP_NEG = 8
OP_EXP = 9
OP_LOG = 10


@dataclass
class Program:
    """Flattened postfix form of an expression tree.

    `code` is a flat int32 array of (opcode, arg) pairs; `consts` holds
    literal values. Treated as immutable after construction.
    """

    code: np.ndarray
    consts: np.ndarray
    n_inputs: int
    stack_need: int
    _code_list: list = field(default=None, repr=False, compare=False)
    _consts_list: list = field(default=None, repr=False, compare=False)

    @property
    def code_list(self):
        if self._code_list is None:
            self._code_list = [int(v) for v in self.code]
        return self._code_list

    @property
    def consts_list(self):
        if self._consts_list is None:
            self._consts_list = [float(v) for v in self.consts]
        return self._consts_list


def make_program(code_pairs, consts, n_inputs, stack_need):
    flat = np.asarray([v for pair in code_pairs for v in pair], dtype=np.int32)
    return Program(
        code=flat,
        consts=np.asarray(consts, dtype=np.float64),
        n_inputs=n_inputs,
        stack_need=max(1, stack_need),
    )


def _select_backend():
    requested = os.environ.get("MPKIT_KERNEL", "auto").strip().lower()
    if requested not in ("", "auto", "pure", "compiled"):
        raise ValueError(
            f"MPKIT_KERNEL must be 'auto', 'pure' or 'compiled', got {requested!r}"
        )
    if requested == "pure":
        from . import _pykernel

        return _pykernel, "pure"
    try:
        from . import _speedups

        return _speedups, "compiled"
    except ImportError:
        if requested == "compiled":
            raise ImportError(
                "MPKIT_KERNEL=compiled but the mpkit._kernel._speedups "
                "extension is not built (install with Cython and a C compiler)"
            )
        from . import _pykernel

        return _pykernel, "pure"


_impl, BACKEND = _select_backend()


def eval_program(program, x):
    """Value of the program at input vector `x`."""
    return _impl.eval_program(program, x)


def grad_program(program, x):
    """(value, gradient) at `x`; one dual sweep per coordinate."""
    return _impl.grad_program(program, x)
