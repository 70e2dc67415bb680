"""Pure-Python kernels for the two inner loops of all series arithmetic.

These run on generic coefficient objects (rationals, Laurent dicts, nested
series) and are drop-in twins of the compiled versions in ``_conv_cy``.
"""


def conv_lists(a, b, n_out):
    """Truncated Cauchy product: out[k] = sum(a[i]*b[k-i]), k < n_out.

    Entries of ``a``/``b`` may be any objects supporting + and *; missing
    high-order terms are treated as unknown by the caller (n_out enforces
    the truncation).  ``None`` entries are treated as zero.
    """
    la, lb = len(a), len(b)
    out = [None] * n_out
    for i in range(min(la, n_out)):
        ai = a[i]
        if ai is None:
            continue
        jmax = min(lb, n_out - i)
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


def dict_mul(a, b):
    """Product of two sparse exponent->coefficient maps; drops zeros."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            t = ca * cb
            if e in out:
                out[e] = out[e] + t
            else:
                out[e] = t
    for e in [e for e, c in out.items() if c == 0]:
        del out[e]
    return out
