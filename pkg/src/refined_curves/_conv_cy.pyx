# cython: language_level=3
# Compiled twin of _conv_py: same semantics on arbitrary Python objects,
# minus the interpreter loop overhead.  Must stay behaviorally identical.


def conv_lists(list a, list b, Py_ssize_t n_out):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i, j, k, jmax
    cdef list out = [None] * n_out
    cdef object ai, bj, t
    for i in range(min(la, n_out)):
        ai = a[i]
        if ai is None:
            continue
        jmax = lb if lb < n_out - i else n_out - i
        for j in range(jmax):
            bj = b[j]
            if bj is None:
                continue
            t = ai * bj
            k = i + j
            if out[k] is None:
                out[k] = t
            else:
                out[k] = out[k] + t
    return out


def dict_mul(dict a, dict b):
    cdef dict out = {}
    cdef object ea, ca, eb, cb, e, t
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            t = ca * cb
            if e in out:
                out[e] = out[e] + t
            else:
                out[e] = t
    cdef list dead = [e for e, c in out.items() if c == 0]
    for e in dead:
        del out[e]
    return out
