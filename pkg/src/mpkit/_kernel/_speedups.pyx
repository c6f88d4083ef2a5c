# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython build of the expression stack machine (see _pykernel for semantics)."""

from libc.math cimport exp as c_exp, log as c_log, pow as c_pow

import numpy as np

from mpkit.exceptions import DomainError


cdef inline double _pow_int(double a, int k) except? -1e308:
    if a == 0.0:
        if k < 0:
            raise DomainError("zero base raised to a negative power")
        return 1.0 if k == 0 else 0.0
    return c_pow(a, <double> k)


cdef double _run_eval(const int[::1] code, const double[::1] consts,
                      const double[::1] xs, double[::1] stack) except? -1e308:
    cdef Py_ssize_t i = 0, n = code.shape[0]
    cdef int op, arg
    cdef Py_ssize_t sp = 0
    cdef double base
    while i < n:
        op = code[i]
        arg = code[i + 1]
        i += 2
        if op == 0:
            stack[sp] = consts[arg]
            sp += 1
        elif op == 1:
            stack[sp] = xs[arg]
            sp += 1
        elif op == 2:
            sp -= 1
            stack[sp - 1] += stack[sp]
        elif op == 3:
            sp -= 1
            stack[sp - 1] -= stack[sp]
        elif op == 4:
            sp -= 1
            stack[sp - 1] *= stack[sp]
        elif op == 5:
            sp -= 1
            if stack[sp] == 0.0:
                raise DomainError("division by zero")
            stack[sp - 1] /= stack[sp]
        elif op == 6:
            sp -= 1
            base = stack[sp - 1]
            if base <= 0.0:
                raise DomainError(
                    "power with non-positive base requires an integer-constant exponent"
                )
            stack[sp - 1] = c_pow(base, stack[sp])
        elif op == 7:
            stack[sp - 1] = _pow_int(stack[sp - 1], arg)
        elif op == 8:
            stack[sp - 1] = -stack[sp - 1]
        elif op == 9:
            stack[sp - 1] = c_exp(stack[sp - 1])
        elif op == 10:
            if stack[sp - 1] <= 0.0:
                raise DomainError("log of non-positive value")
            stack[sp - 1] = c_log(stack[sp - 1])
        else:
            raise ValueError(f"bad opcode {op}")
    return stack[0]


cdef int _run_dual(const int[::1] code, const double[::1] consts,
                   const double[::1] xs, Py_ssize_t seed,
                   double[::1] val, double[::1] der,
                   double* out_val, double* out_der) except -1:
    cdef Py_ssize_t i = 0, n = code.shape[0]
    cdef int op, arg, k
    cdef Py_ssize_t sp = 0
    cdef double a, b, q, v
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
            v = c_pow(a, b)
            val[sp - 1] = v
            der[sp - 1] = v * (der[sp] * c_log(a) + b * der[sp - 1] / a)
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
            v = c_exp(val[sp - 1])
            val[sp - 1] = v
            der[sp - 1] = v * der[sp - 1]
        elif op == 10:
            a = val[sp - 1]
            if a <= 0.0:
                raise DomainError("log of non-positive value")
            val[sp - 1] = c_log(a)
            der[sp - 1] = der[sp - 1] / a
        else:
            raise ValueError(f"bad opcode {op}")
    out_val[0] = val[0]
    out_der[0] = der[0]
    return 0


def eval_program(program, x):
    cdef const int[::1] code = program.code
    cdef const double[::1] consts = program.consts
    cdef double[::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    stack_arr = np.empty(program.stack_need, dtype=np.float64)
    cdef double[::1] stack = stack_arr
    return _run_eval(code, consts, xs, stack)


def grad_program(program, x):
    cdef const int[::1] code = program.code
    cdef const double[::1] consts = program.consts
    xs_arr = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] xs = xs_arr
    cdef Py_ssize_t nx = xs.shape[0]
    val_arr = np.empty(program.stack_need, dtype=np.float64)
    der_arr = np.empty(program.stack_need, dtype=np.float64)
    cdef double[::1] val = val_arr
    cdef double[::1] der = der_arr
    grad_arr = np.empty(nx, dtype=np.float64)
    cdef double[::1] grad = grad_arr
    cdef double value = 0.0, g = 0.0
    cdef Py_ssize_t seed
    for seed in range(nx):
        _run_dual(code, consts, xs, seed, val, der, &value, &g)
        grad[seed] = g
    return value, grad_arr
