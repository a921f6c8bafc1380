"""Pure-Python term-map kernels.

A term map is a dict ``{(alpha, beta): coeff}`` standing for
``sum coeff * S_alpha S_beta^*``; words are tuples of ints.  ``_ckernels.pyx``
mirrors this module function for function.
"""
from itertools import product


def mono_mul(a, b, c, d):
    """(S_a S_b^*)(S_c S_d^*) as a pair ``(alpha, beta)``, or None for zero."""
    lb = len(b)
    lc = len(c)
    if lc >= lb:
        if c[:lb] == b:
            return (a + c[lb:], d)
        return None
    if b[:lc] == c:
        return (a, d + b[lc:])
    return None


def prune(terms):
    return {k: v for k, v in terms.items() if v}


def add_terms(x, y, sign=1):
    out = dict(x)
    for k, v in y.items():
        if sign < 0:
            v = -v
        old = out.get(k)
        out[k] = v if old is None else old + v
    return prune(out)


def mul_terms(x, y):
    out = {}
    get = out.get
    for (a, b), cx in x.items():
        lb = len(b)
        for (c, d), cy in y.items():
            lc = len(c)
            if lc >= lb:
                if c[:lb] != b:
                    continue
                key = (a + c[lb:], d)
            else:
                if b[:lc] != c:
                    continue
                key = (a, d + b[lc:])
            v = cx * cy
            old = get(key)
            out[key] = v if old is None else old + v
    return prune(out)


def expand_terms(terms, targets, n):
    """Rewrite every degree-d term so that its beta has length ``targets[d]``."""
    out = {}
    get = out.get
    letters = range(1, n + 1)
    for (a, b), c in terms.items():
        k = targets[len(a) - len(b)] - len(b)
        if k < 0:
            raise ValueError(
                f"target level {targets[len(a) - len(b)]} is below |beta|={len(b)}"
            )
        if k == 0:
            old = get((a, b))
            out[(a, b)] = c if old is None else old + c
            continue
        for nu in product(letters, repeat=k):
            key = (a + nu, b + nu)
            old = get(key)
            out[key] = c if old is None else old + c
    return prune(out)


def collapse_terms(terms, n):
    """Merge complete families {(a+(i,), b+(i,))}_i sharing one coefficient, to a fixpoint."""
    result = dict(terms)
    if not result:
        return result
    top = max(len(b) for (_, b) in result)
    for level in range(top, 0, -1):
        families = {}
        for key, c in result.items():
            a, b = key
            if len(b) == level and a and a[-1] == b[-1]:
                families.setdefault((a[:-1], b[:-1]), []).append((key, c))
        for parent, members in families.items():
            if len(members) != n:
                continue
            c0 = members[0][1]
            if any(c != c0 for _, c in members[1:]):
                continue
            for key, _ in members:
                del result[key]
            old = result.get(parent)
            result[parent] = c0 if old is None else old + c0
    return prune(result)


def star_terms(x):
    return {(b, a): c.conjugate() for (a, b), c in x.items()}


def shift_terms(x, n):
    out = {}
    for (a, b), c in x.items():
        for i in range(1, n + 1):
            out[((i,) + a, (i,) + b)] = c
    return out


def census_product(ks, masks, n, full_k, full_mask):
    """Walk every n-tuple of child codes; count Kraft-complete and
    cover-complete joins and the tuples where the two disagree.

    ``ks[t]`` and ``masks[t]`` profile child code t at depth d-1; child i's
    mask is shifted by ``i * n**(d-1)`` bits.  Returns
    ``(total, kraft_complete, cover_complete, mismatches)``.
    """
    width = full_mask.bit_length() // n
    total = kc = cc = bad = 0
    for combo in product(range(len(ks)), repeat=n):
        k = 0
        m = 0
        for i, t in enumerate(combo):
            k += ks[t]
            m |= masks[t] << (i * width)
        a = k == full_k
        b = m == full_mask
        total += 1
        kc += a
        cc += b
        bad += a != b
    return total, kc, cc, bad
