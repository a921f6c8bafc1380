# cython: language_level=3, boundscheck=False
"""Compiled term-map kernels; same contracts as ``_pykernels``."""
from itertools import product

from cpython.mem cimport PyMem_Free, PyMem_Malloc


cdef inline bint _startswith(tuple w, tuple p, Py_ssize_t lp):
    cdef Py_ssize_t i
    for i in range(lp):
        if w[i] != p[i]:
            return False
    return True


def mono_mul(tuple a, tuple b, tuple c, tuple d):
    cdef Py_ssize_t lb = len(b), lc = len(c)
    if lc >= lb:
        if _startswith(c, b, lb):
            return (a + c[lb:], d)
        return None
    if _startswith(b, c, lc):
        return (a, d + b[lc:])
    return None


def prune(dict terms):
    return {k: v for k, v in terms.items() if v}


def add_terms(dict x, dict y, int sign=1):
    cdef dict out = dict(x)
    for k, v in y.items():
        if sign < 0:
            v = -v
        old = out.get(k)
        out[k] = v if old is None else old + v
    return prune(out)


def mul_terms(dict x, dict y):
    cdef dict out = {}
    cdef list ylist = [(c, d, len(c), cy) for (c, d), cy in y.items()]
    cdef tuple a, b, c, d, key
    cdef Py_ssize_t lb, lc
    for (a, b), cx in x.items():
        lb = len(b)
        for c, d, lc, cy in ylist:
            if lc >= lb:
                if not _startswith(c, b, lb):
                    continue
                key = (a + c[lb:], d)
            else:
                if not _startswith(b, c, lc):
                    continue
                key = (a, d + b[lc:])
            v = cx * cy
            old = out.get(key)
            out[key] = v if old is None else old + v
    return prune(out)


def expand_terms(dict terms, dict targets, int n):
    cdef dict out = {}
    cdef tuple a, b, key
    cdef Py_ssize_t k
    cdef list suffixes
    cdef dict cache = {}
    for (a, b), c in terms.items():
        k = targets[len(a) - len(b)] - len(b)
        if k < 0:
            raise ValueError(
                f"target level {targets[len(a) - len(b)]} is below |beta|={len(b)}"
            )
        if k == 0:
            old = out.get((a, b))
            out[(a, b)] = c if old is None else old + c
            continue
        suffixes = cache.get(k)
        if suffixes is None:
            suffixes = list(product(range(1, n + 1), repeat=k))
            cache[k] = suffixes
        for nu in suffixes:
            key = (a + nu, b + nu)
            old = out.get(key)
            out[key] = c if old is None else old + c
    return prune(out)


def collapse_terms(dict terms, int n):
    cdef dict result = dict(terms)
    cdef dict families
    cdef list members
    cdef tuple a, b, key
    cdef Py_ssize_t level, top
    if not result:
        return result
    top = max([len(k[1]) for k in result])
    for level in range(top, 0, -1):
        families = {}
        for key, c in result.items():
            a = key[0]
            b = key[1]
            if len(b) == level and len(a) > 0 and a[-1] == b[-1]:
                parent = (a[:-1], b[:-1])
                members = families.get(parent)
                if members is None:
                    families[parent] = [(key, c)]
                else:
                    members.append((key, c))
        for parent, members in families.items():
            if len(members) != n:
                continue
            c0 = members[0][1]
            if any([mc != c0 for _, mc in members[1:]]):
                continue
            for key, _ in members:
                del result[key]
            old = result.get(parent)
            result[parent] = c0 if old is None else old + c0
    return prune(result)


def star_terms(dict x):
    return {(b, a): c.conjugate() for (a, b), c in x.items()}


def shift_terms(dict x, int n):
    cdef dict out = {}
    cdef int i
    for (a, b), c in x.items():
        for i in range(1, n + 1):
            out[((i,) + a, (i,) + b)] = c
    return out


ctypedef unsigned long long u64

cdef struct _Census:
    long long total, kc, cc, bad


cdef void _walk(int i, int n, Py_ssize_t size, long long *ks, u64 *masks,
                int width, long long k, u64 m, long long full_k, u64 full_mask,
                _Census *out) noexcept nogil:
    cdef Py_ssize_t t
    cdef long long k2
    cdef u64 m2
    cdef bint a, b
    if i == n - 1:
        for t in range(size):
            k2 = k + ks[t]
            m2 = m | (masks[t] << (i * width))
            a = k2 == full_k
            b = m2 == full_mask
            out.total += 1
            out.kc += a
            out.cc += b
            out.bad += a != b
        return
    for t in range(size):
        _walk(i + 1, n, size, ks, masks, width, k + ks[t],
              m | (masks[t] << (i * width)), full_k, full_mask, out)


def census_product(ks, masks, int n, long long full_k, full_mask):
    cdef Py_ssize_t size = len(ks), t
    cdef int width = int(full_mask).bit_length() // n
    if width * n > 64:
        raise ValueError("masks wider than 64 bits")
    cdef long long *kbuf = <long long *>PyMem_Malloc(size * sizeof(long long))
    cdef u64 *mbuf = <u64 *>PyMem_Malloc(size * sizeof(u64))
    cdef _Census out
    cdef u64 fm = full_mask
    if kbuf == NULL or mbuf == NULL:
        PyMem_Free(kbuf)
        PyMem_Free(mbuf)
        raise MemoryError()
    try:
        for t in range(size):
            kbuf[t] = ks[t]
            mbuf[t] = masks[t]
        out.total = out.kc = out.cc = out.bad = 0
        with nogil:
            _walk(0, n, size, kbuf, mbuf, width, 0, 0, full_k, fm, &out)
    finally:
        PyMem_Free(kbuf)
        PyMem_Free(mbuf)
    return out.total, out.kc, out.cc, out.bad
