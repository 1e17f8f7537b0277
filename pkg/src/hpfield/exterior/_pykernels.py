"""Pure-Python blade kernels.

Blades are encoded as integer bitmasks (bit ``i`` set <=> coordinate index
``i`` present).  Elements are plain ``dict[int, float]`` maps from mask to
coefficient.  The compiled module ``_ckernels`` exposes the same four
functions with identical semantics.
"""


def merge_sign(a, b):
    """Sign of the permutation sorting the concatenation ``a ++ b``.

    Counts the pairs ``(i in a, j in b)`` with ``i > j``.
    """
    swaps = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        swaps += (a >> (j + 1)).bit_count()
        b ^= low
    return -1.0 if swaps & 1 else 1.0


def _prune(out):
    # key-sorted output keeps summation order identical to the compiled path
    return {k: out[k] for k in sorted(out) if out[k] != 0.0}


def wedge_terms(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if ma & mb:
                continue
            key = ma | mb
            out[key] = out.get(key, 0.0) + merge_sign(ma, mb) * ca * cb
    return _prune(out)


def contract_terms(small, big):
    """Contract every blade of ``small`` into the leading slots of ``big``.

    For blades ``I`` (small) and ``J`` (big) with ``I`` a subset of ``J`` the
    result is ``merge_sign(I, J - I)`` on the blade ``J - I``.  Covers both the
    left interior product (vector into form) and the right one (form into
    vector).
    """
    out = {}
    for mi, ci in small.items():
        for mj, cj in big.items():
            if mi & ~mj:
                continue
            rest = mj ^ mi
            out[rest] = out.get(rest, 0.0) + merge_sign(mi, rest) * ci * cj
    return _prune(out)


def pair_terms(a, b):
    total = 0.0
    if len(a) > len(b):
        a, b = b, a
    for m, c in a.items():
        other = b.get(m)
        if other is not None:
            total += c * other
    return total
