"""Pure-Python hot loops.  ``_kernels.pyx`` mirrors this module function for function."""


def free_reduce(letters):
    """Freely reduce a sequence of signed letters (nonzero ints, ``-a`` is the inverse of ``a``)."""
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def insertion_neighbours(word, insertions, max_length):
    """All reduced words ``word[:p] + ins + word[p:]`` of length at most ``max_length``.

    Yields ``(new_word, position, insertion_index)`` for every position
    ``0 <= p <= len(word)`` and every insertion.
    """
    n = len(word)
    out = []
    for p in range(n + 1):
        head = word[:p]
        tail = word[p:]
        for k, ins in enumerate(insertions):
            # cancellation can only happen at the two seams
            stack = list(head)
            for l in ins:
                if stack and stack[-1] == -l:
                    stack.pop()
                else:
                    stack.append(l)
            j = 0
            while j < len(tail) and stack and stack[-1] == -tail[j]:
                stack.pop()
                j += 1
            if len(stack) + len(tail) - j > max_length:
                continue
            stack.extend(tail[j:])
            out.append((tuple(stack), p, k))
    return out


def series_mul(a, b, bound):
    """Product of two truncated series given as ``{monomial tuple: int}`` dicts."""
    out = {}
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


def series_mul_power(a, gen, coeffs, bound):
    """Multiply ``a`` on the right by ``sum_j coeffs[j] * X_gen^j`` (``j <= bound``)."""
    out = {}
    for m, c in a.items():
        room = bound - len(m)
        tail = m
        for j in range(min(room, len(coeffs) - 1) + 1):
            cj = coeffs[j]
            if cj:
                v = out.get(tail, 0) + c * cj
                if v:
                    out[tail] = v
                else:
                    out.pop(tail, None)
            tail = tail + (gen,)
    return out
