"""Pure-Python wedge/differential kernels on bitmask-keyed term dicts.

A term key is an int whose set bits are coframe positions in canonical order:
holomorphic index i sits at bit i-1 and antiholomorphic index i at bit n+i-1,
so ascending bit order is the canonical normalization.  Coefficients are any
ring elements supporting ``+``, ``*``, unary ``-`` and truthiness.
"""


def mask_sign(m1: int, m2: int) -> int:
    """Sign of reordering the factors of m1 followed by m2 into ascending order."""
    parity = 0
    while m2:
        low = m2 & -m2
        parity += (m1 >> low.bit_length()).bit_count()
        m2 ^= low
    return -1 if parity & 1 else 1


def wedge_terms(t1: dict, t2: dict) -> dict:
    out: dict = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            if m1 & m2:
                continue
            v = c1 * c2
            if mask_sign(m1, m2) < 0:
                v = -v
            m = m1 | m2
            if m in out:
                out[m] = out[m] + v
            else:
                out[m] = v
    return {m: v for m, v in out.items() if v}


def differential_terms(terms: dict, gens: list) -> dict:
    """Graded Leibniz extension of d; ``gens[b]`` is the 2-form term dict of d(e_b)."""
    out: dict = {}
    for m, c in terms.items():
        rank = 0
        bits = m
        while bits:
            low = bits & -bits
            b = low.bit_length() - 1
            bits ^= low
            g = gens[b]
            if g:
                rest = m ^ low
                odd = rank & 1
                for gm, gc in g.items():
                    if gm & rest:
                        continue
                    v = c * gc
                    if (mask_sign(gm, rest) < 0) != bool(odd):
                        v = -v
                    key = gm | rest
                    if key in out:
                        out[key] = out[key] + v
                    else:
                        out[key] = v
            rank += 1
    return {m: v for m, v in out.items() if v}
