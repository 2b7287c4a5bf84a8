# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot loops; see ``_pykernels`` for the reference semantics."""

from libc.stdlib cimport malloc, free


def free_reduce(letters):
    cdef Py_ssize_t n = len(letters), top = 0, i
    cdef long l
    cdef long *buf = <long *> malloc((n + 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            l = letters[i]
            if top and buf[top - 1] == -l:
                top -= 1
            else:
                buf[top] = l
                top += 1
        return tuple([buf[i] for i in range(top)])
    finally:
        free(buf)


def insertion_neighbours(tuple word, list insertions, Py_ssize_t max_length):
    cdef Py_ssize_t n = len(word), p, k, j, i, top, m, total, maxins = 0
    cdef long l
    cdef long *w
    cdef long *stack
    cdef tuple ins
    cdef list out = []
    for ins in insertions:
        if len(ins) > maxins:
            maxins = len(ins)
    w = <long *> malloc((n + 1) * sizeof(long))
    stack = <long *> malloc((n + maxins + 1) * sizeof(long))
    if w == NULL or stack == NULL:
        free(w)
        free(stack)
        raise MemoryError()
    try:
        for i in range(n):
            w[i] = word[i]
        for p in range(n + 1):
            for k in range(len(insertions)):
                ins = <tuple> insertions[k]
                for i in range(p):
                    stack[i] = w[i]
                top = p
                m = len(ins)
                for i in range(m):
                    l = ins[i]
                    if top and stack[top - 1] == -l:
                        top -= 1
                    else:
                        stack[top] = l
                        top += 1
                j = p
                while j < n and top and stack[top - 1] == -w[j]:
                    top -= 1
                    j += 1
                total = top + n - j
                if total > max_length:
                    continue
                for i in range(j, n):
                    stack[top] = w[i]
                    top += 1
                out.append((tuple([stack[i] for i in range(top)]), p, k))
        return out
    finally:
        free(w)
        free(stack)


def series_mul(dict a, dict b, Py_ssize_t bound):
    cdef dict out = {}
    cdef tuple m1, m2, m
    cdef object c1, c2, c
    cdef Py_ssize_t room
    for m1, c1 in a.items():
        room = bound - len(m1)
        if room < 0:
            continue
        for m2, c2 in b.items():
            if len(m2) > room:
                continue
            m = m1 + m2
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def series_mul_power(dict a, long gen, list coeffs, Py_ssize_t bound):
    cdef dict out = {}
    cdef tuple m, tail
    cdef object c, cj, v
    cdef Py_ssize_t j, top, room
    cdef tuple g1 = (gen,)
    for m, c in a.items():
        room = bound - len(m)
        top = len(coeffs) - 1
        if room < top:
            top = room
        tail = m
        for j in range(top + 1):
            cj = coeffs[j]
            if cj:
                v = out.get(tail, 0) + c * cj
                if v:
                    out[tail] = v
                else:
                    out.pop(tail, None)
            tail = tail + g1
    return out
