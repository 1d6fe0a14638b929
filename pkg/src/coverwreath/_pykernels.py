"""Pure-Python implementations of the matrix-group hot loops.

Matrices travel as integer codes: the n*n entries, row-major, read as the
base-q digits of the code with the first entry most significant.  Numeric
order of codes therefore equals lexicographic order of entry tuples.
``addt``/``mult`` are flat q*q field tables and ``scalars`` lists the field
elements of the central subgroup used for canonicalization.
"""

from __future__ import annotations


def decode(code, nn, q):
    out = [0] * nn
    for i in range(nn - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return tuple(out)


def encode(entries, q):
    code = 0
    for e in entries:
        code = code * q + e
    return code


def _product(a, b, n, q, addt, mult):
    out = []
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = addt[acc * q + mult[row[k] * q + b[k * n + j]]]
            out.append(acc)
    return out


def _canonical(entries, q, mult, scalars):
    best = tuple(entries)
    for s in scalars:
        if s == 1:
            continue
        cand = tuple(mult[s * q + e] for e in entries)
        if cand < best:
            best = cand
    return best


def mul_canon(a, b, n, q, addt, mult, scalars):
    nn = n * n
    prod = _product(decode(a, nn, q), decode(b, nn, q), n, q, addt, mult)
    return encode(_canonical(prod, q, mult, scalars), q)


def cayley_bfs(gens, identity, n, q, addt, mult, scalars, budget):
    """Breadth-first enumeration of the group generated by ``gens``.

    Returns ``(elements, nbr, parent, pgen)`` as flat lists of codes and
    indices, where ``nbr[g * len(gens) + i]`` is the index of g * gens[i];
    or None when more than ``budget`` elements exist.
    """
    nn = n * n
    gen_t = [decode(g, nn, q) for g in gens]
    start = decode(identity, nn, q)
    elems = [start]
    index = {start: 0}
    nbr, parent, pgen = [], [-1], [-1]
    head = 0
    while head < len(elems):
        g = elems[head]
        for i, s in enumerate(gen_t):
            h = _canonical(_product(g, s, n, q, addt, mult), q, mult, scalars)
            j = index.get(h)
            if j is None:
                j = len(elems)
                if j >= budget:
                    return None
                index[h] = j
                elems.append(h)
                parent.append(head)
                pgen.append(i)
            nbr.append(j)
        head += 1
    return [encode(e, q) for e in elems], nbr, parent, pgen
