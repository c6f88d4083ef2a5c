"""Pure-Python stack machine for expression programs.

Reference semantics for the kernel; the Cython build in `_speedups.pyx`
must behave identically, including domain errors and overflow-to-inf.
"""

import math

import numpy as np

from mpkit.exceptions import DomainError

_INF = math.inf


def _pow_pos(a, b):
    # a > 0 guaranteed by caller; overflow saturates like C pow
    try:
        return math.pow(a, b)
    except OverflowError:
        return _INF


def _pow_int(a, k):
    if a == 0.0:
        if k < 0:
            raise DomainError("zero base raised to a negative power")
        return 1.0 if k == 0 else 0.0
    try:
        return math.pow(a, float(k))
    except OverflowError:
        return -_INF if (a < 0.0 and k % 2 != 0) else _INF


def _exp(a):
    try:
        return math.exp(a)
    except OverflowError:
        return _INF


def eval_program(program, x):
    code = program.code_list
    consts = program.consts_list
    xs = [float(v) for v in x]
    stack = [0.0] * program.stack_need
    sp = 0
    i = 0
    n = len(code)
    while i < n:
        op = code[i]
        arg = code[i + 1]
        i += 2
        if op == 0:  # CONST
            stack[sp] = consts[arg]
            sp += 1
        elif op == 1:  # VAR
            stack[sp] = xs[arg]
            sp += 1
        elif op == 2:  # ADD
            sp -= 1
            stack[sp - 1] += stack[sp]
        elif op == 3:  # SUB
            sp -= 1
            stack[sp - 1] -= stack[sp]
        elif op == 4:  # MUL
            sp -= 1
            stack[sp - 1] *= stack[sp]
        elif op == 5:  # DIV
            sp -= 1
            if stack[sp] == 0.0:
                raise DomainError("division by zero")
            stack[sp - 1] /= stack[sp]
        elif op == 6:  # POW
            sp -= 1
            base = stack[sp - 1]
            if base <= 0.0:
                raise DomainError(
                    "power with non-positive base requires an integer-constant exponent"
                )
            stack[sp - 1] = _pow_pos(base, stack[sp])
        elif op == 7:  # POWI
            stack[sp - 1] = _pow_int(stack[sp - 1], arg)
        elif op == 8:  # NEG
            stack[sp - 1] = -stack[sp - 1]
        elif op == 9:  # EXP
            stack[sp - 1] = _exp(stack[sp - 1])
        elif op == 10:  # LOG
            if stack[sp - 1] <= 0.0:
                raise DomainError("log of non-positive value")
            stack[sp - 1] = math.log(stack[sp - 1])
        else:
            raise ValueError(f"bad opcode {op}")
    return stack[0]


def _dual_sweep(code, consts, xs, seed, val, der):
    """One forward dual-number pass; returns (value, d/dx[seed])."""
    sp = 0
    i = 0
    n = len(code)
    while i < n:
        op = code[i]
        arg = code[i + 1]
        i += 2
        if op == 0:
            val[sp] = consts[arg]
            der[sp] = 0.0
            sp += 1
        elif op == 1:
            val[sp] = xs[arg]
            der[sp] = 1.0 if arg == seed else 0.0
            sp += 1
        elif op == 2:
            sp -= 1
            val[sp - 1] += val[sp]
            der[sp - 1] += der[sp]
        elif op == 3:
            sp -= 1
            val[sp - 1] -= val[sp]
            der[sp - 1] -= der[sp]
        elif op == 4:
            sp -= 1
            a = val[sp - 1]
            b = val[sp]
            val[sp - 1] = a * b
            der[sp - 1] = a * der[sp] + b * der[sp - 1]
        elif op == 5:
            sp -= 1
            b = val[sp]
            if b == 0.0:
                raise DomainError("division by zero")
            q = val[sp - 1] / b
            val[sp - 1] = q
            der[sp - 1] = (der[sp - 1] - q * der[sp]) / b
        elif op == 6:
            sp -= 1
            a = val[sp - 1]
            b = val[sp]
            if a <= 0.0:
                raise DomainError(
                    "power with non-positive base requires an integer-constant exponent"
                )
            v = _pow_pos(a, b)
            val[sp - 1] = v
            der[sp - 1] = v * (der[sp] * math.log(a) + b * der[sp - 1] / a)
        elif op == 7:
            a = val[sp - 1]
            k = arg
            if a == 0.0:
                if k < 0:
                    raise DomainError("zero base raised to a negative power")
                val[sp - 1] = 1.0 if k == 0 else 0.0
                der[sp - 1] = der[sp - 1] if k == 1 else 0.0
            else:
                val[sp - 1] = _pow_int(a, k)
                der[sp - 1] = 0.0 if k == 0 else k * _pow_int(a, k - 1) * der[sp - 1]
        elif op == 8:
            val[sp - 1] = -val[sp - 1]
            der[sp - 1] = -der[sp - 1]
        elif op == 9:
            v = _exp(val[sp - 1])
            val[sp - 1] = v
            der[sp - 1] = v * der[sp - 1]
        elif op == 10:
            a = val[sp - 1]
            if a <= 0.0:
                raise DomainError("log of non-positive value")
            val[sp - 1] = math.log(a)
            der[sp - 1] = der[sp - 1] / a
        else:
            raise ValueError(f"bad opcode {op}")
    return val[0], der[0]


def grad_program(program, x):
    code = program.code_list
    consts = program.consts_list
    xs = [float(v) for v in x]
    depth = program.stack_need
    val = [0.0] * depth
    der = [0.0] * depth
    grad = np.empty(len(xs))
    value = 0.0
    for seed in range(len(xs)):
        value, grad[seed] = _dual_sweep(code, consts, xs, seed, val, der)
    return value, grad
