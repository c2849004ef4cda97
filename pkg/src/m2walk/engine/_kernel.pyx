# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batch backend for the walk, baseline-walk and urn ensembles.

Bit-compatibility contract: for identical replica streams this module
produces byte-identical results to the pure-python backend in
``m2walk.engine._fallback`` and to the scalar reference in
``m2walk.engine.state``.  Three things make that work and must be kept
in sync across all backends:

* the number of uniforms consumed per operation (see ``state``),
* the exact floating-point expression orderings (the extension is
  compiled with ``-ffp-contract=off`` so no multiply-add fusion can
  reorder them), and
* the shared log tables: the running-statistic weights are precomputed
  once in numpy and passed in, because C ``log`` and numpy's vectorized
  ``log`` may differ in the last bit.

Every uniform comes from ``bitgen.next_double`` on a per-replica
counter-based generator, which is also exactly what
``numpy.random.Generator.random`` consumes, in the same order.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from libc.math cimport fabs
from libc.stdint cimport int64_t

from numpy.random cimport bitgen_t

__all__ = ["run_walk_chunk", "run_erw_chunk", "run_urn_chunk"]

cdef const char *_CAPSULE = "BitGenerator"


cdef bitgen_t *_bitgen_pointer(object bit_generator) except NULL:
    capsule = bit_generator.capsule
    if not PyCapsule_IsValid(capsule, _CAPSULE):
        raise ValueError("object does not expose a BitGenerator capsule")
    return <bitgen_t *> PyCapsule_GetPointer(capsule, _CAPSULE)


# ---------------------------------------------------------------------------
# two-channel walk
# ---------------------------------------------------------------------------

cdef void _walk_one(double p, int64_t n_max, int64_t[::1] cps,
                    int literal, int track, double lam,
                    double[::1] w_log_sq, double[::1] scale_plain, double[::1] scale_thresh,
                    bitgen_t *rng, Py_ssize_t row,
                    int64_t[:, ::1] pos_out, int64_t[:, ::1] plus_out, int64_t[:, ::1] minus_out,
                    double[:, ::1] qsl_plain, double[:, ::1] qsl_thresh,
                    double[:, ::1] lil_plain, double[:, ::1] lil_thresh,
                    int64_t[:, ::1] returns_out) noexcept nogil:
    cdef int64_t n, n_plus, n_minus, s, k, ret, value, total
    cdef Py_ssize_t ci = 0, ncp = cps.shape[0]
    cdef double u, g1, g2, a1, a2, z, qp, qm, nd, kd, d, dd, ad, t
    cdef double acc_plain = 0.0, acc_thresh = 0.0, max_plain = 0.0, max_thresh = 0.0
    cdef int step, half

    # two independent fair signs
    n_plus = 0
    if rng.next_double(rng.state) < 0.5:
        n_plus = n_plus + 1
    if rng.next_double(rng.state) < 0.5:
        n_plus = n_plus + 1
    n_minus = 2 - n_plus
    n = 2
    s = n_plus - n_minus
    ret = 0

    if track:
        kd = 2.0
        d = (<double> s) / kd - lam
        dd = d * d
        acc_plain = acc_plain + dd
        acc_thresh = acc_thresh + w_log_sq[2] * dd
        ad = fabs(d)
        if scale_plain[2] * ad > max_plain:
            max_plain = scale_plain[2] * ad
        if scale_thresh[2] * ad > max_thresh:
            max_thresh = scale_thresh[2] * ad
        if s == 0:
            ret = ret + 1
    if ci < ncp and cps[ci] == 2:
        pos_out[row, ci] = s
        plus_out[row, ci] = n_plus
        minus_out[row, ci] = n_minus
        qsl_plain[row, ci] = acc_plain
        qsl_thresh[row, ci] = acc_thresh
        lil_plain[row, ci] = max_plain
        lil_thresh[row, ci] = max_thresh
        returns_out[row, ci] = ret
        ci = ci + 1

    while n < n_max:
        nd = <double> n
        g1 = (<double> n_plus) / nd
        g2 = (<double> n_minus) / nd
        if literal:
            # channel 1: retrieved value, then its sign perturbation
            u = rng.next_double(rng.state)
            if u < g1:
                value = 1
            elif u < g1 + g2:
                value = -1
            else:
                value = 0
            u = rng.next_double(rng.state)
            if u < p:
                total = value
            else:
                total = -value
            # channel 2
            u = rng.next_double(rng.state)
            if u < g1:
                value = 1
            elif u < g1 + g2:
                value = -1
            else:
                value = 0
            u = rng.next_double(rng.state)
            if u < p:
                total = total + value
            else:
                total = total - value
            if total >= 1:
                step = 1
            elif total <= -1:
                step = -1
            else:
                step = 0
        else:
            a1 = (1.0 - p) * g1 + p * g2 - 1.0
            a2 = (1.0 - p) * g2 + p * g1 - 1.0
            z = 1.0 - (g1 + g2)
            qp = a1 * a1 - z * z
            qm = a2 * a2 - z * z
            u = rng.next_double(rng.state)
            if u < qp:
                step = 1
            elif u < qp + qm:
                step = -1
            else:
                step = 0
        if step == 1:
            n_plus = n_plus + 1
            s = s + 1
        elif step == -1:
            n_minus = n_minus + 1
            s = s - 1
        n = n + 1
        k = n
        if track:
            kd = <double> k
            d = (<double> s) / kd - lam
            dd = d * d
            acc_plain = acc_plain + dd
            acc_thresh = acc_thresh + w_log_sq[k] * dd
            ad = fabs(d)
            if scale_plain[k] * ad > max_plain:
                max_plain = scale_plain[k] * ad
            if scale_thresh[k] * ad > max_thresh:
                max_thresh = scale_thresh[k] * ad
            if s == 0:
                ret = ret + 1
        if ci < ncp and cps[ci] == k:
            pos_out[row, ci] = s
            plus_out[row, ci] = n_plus
            minus_out[row, ci] = n_minus
            qsl_plain[row, ci] = acc_plain
            qsl_thresh[row, ci] = acc_thresh
            lil_plain[row, ci] = max_plain
            lil_thresh[row, ci] = max_thresh
            returns_out[row, ci] = ret
            ci = ci + 1


def run_walk_chunk(double p, int64_t n_max, int64_t[::1] checkpoints,
                   object bit_generators, Py_ssize_t lo, Py_ssize_t hi,
                   bint literal, bint track, double[::1] lam,
                   double[::1] w_log_sq, double[::1] scale_plain, double[::1] scale_thresh,
                   int64_t[:, ::1] pos_out, int64_t[:, ::1] plus_out, int64_t[:, ::1] minus_out,
                   double[:, ::1] qsl_plain, double[:, ::1] qsl_thresh,
                   double[:, ::1] lil_plain, double[:, ::1] lil_thresh,
                   int64_t[:, ::1] returns_out):
    """Simulate walk replicas ``lo..hi`` into the per-replica output rows.

    ``bit_generators`` is the full replica list; each replica consumes
    only its own stream, so any partition into chunks (and any thread
    assignment of chunks) yields identical output.
    """
    cdef Py_ssize_t r
    cdef bitgen_t *rng
    for r in range(lo, hi):
        rng = _bitgen_pointer(bit_generators[r])
        with nogil:
            _walk_one(p, n_max, checkpoints, literal, track, lam[r],
                      w_log_sq, scale_plain, scale_thresh, rng, r,
                      pos_out, plus_out, minus_out,
                      qsl_plain, qsl_thresh, lil_plain, lil_thresh, returns_out)


# ---------------------------------------------------------------------------
# classical single-channel baseline
# ---------------------------------------------------------------------------

cdef void _erw_one(double p, double q_first, int64_t n_max, int64_t[::1] cps,
                   bitgen_t *rng, Py_ssize_t row,
                   int64_t[:, ::1] pos_out, int64_t[:, ::1] plus_out) noexcept nogil:
    cdef int64_t n, n_plus
    cdef Py_ssize_t ci = 0, ncp = cps.shape[0]
    cdef double u, prob_plus

    n_plus = 0
    if rng.next_double(rng.state) < q_first:
        n_plus = 1
    n = 1
    while n < n_max:
        prob_plus = (1.0 - p) + (2.0 * p - 1.0) * ((<double> n_plus) / (<double> n))
        u = rng.next_double(rng.state)
        if u < prob_plus:
            n_plus = n_plus + 1
        n = n + 1
        if ci < ncp and cps[ci] == n:
            pos_out[row, ci] = 2 * n_plus - n
            plus_out[row, ci] = n_plus
            ci = ci + 1


def run_erw_chunk(double p, double q_first, int64_t n_max, int64_t[::1] checkpoints,
                  object bit_generators, Py_ssize_t lo, Py_ssize_t hi,
                  int64_t[:, ::1] pos_out, int64_t[:, ::1] plus_out):
    """Simulate classical-walk replicas ``lo..hi``."""
    cdef Py_ssize_t r
    cdef bitgen_t *rng
    for r in range(lo, hi):
        rng = _bitgen_pointer(bit_generators[r])
        with nogil:
            _erw_one(p, q_first, n_max, checkpoints, rng, r, pos_out, plus_out)


# ---------------------------------------------------------------------------
# three-color urn
# ---------------------------------------------------------------------------

cdef int _urn_color(double u, int64_t red, int64_t blue, double td) noexcept nogil:
    if u < (<double> red) / td:
        return 0
    if u < (<double> (red + blue)) / td:
        return 1
    return 2


cdef void _urn_one(double p, int64_t n_max, int64_t[::1] cps,
                   bitgen_t *rng, Py_ssize_t row,
                   int64_t[:, ::1] red_out, int64_t[:, ::1] blue_out,
                   int64_t[:, ::1] green_out) noexcept nogil:
    cdef int64_t red, blue, green, total
    cdef Py_ssize_t ci = 0, ncp = cps.shape[0]
    cdef double u, td, prob_red, prob_blue
    cdef int ca, cb, tmp

    red = 0
    if rng.next_double(rng.state) < 0.5:
        red = red + 1
    if rng.next_double(rng.state) < 0.5:
        red = red + 1
    blue = 2 - red
    green = 0
    total = 2
    if ci < ncp and cps[ci] == 2:
        red_out[row, ci] = red
        blue_out[row, ci] = blue
        green_out[row, ci] = green
        ci = ci + 1

    while total < n_max:
        td = <double> total
        ca = _urn_color(rng.next_double(rng.state), red, blue, td)
        cb = _urn_color(rng.next_double(rng.state), red, blue, td)
        if ca > cb:
            tmp = ca
            ca = cb
            cb = tmp
        # unordered pair -> law of the added ball (same expressions as
        # state.urn_replacement_law)
        if ca == 0 and cb == 0:
            prob_red = p * p
            prob_blue = (1.0 - p) * (1.0 - p)
        elif ca == 0 and cb == 1:
            prob_red = p * (1.0 - p)
            prob_blue = p * (1.0 - p)
        elif ca == 0 and cb == 2:
            prob_red = p
            prob_blue = 1.0 - p
        elif ca == 1 and cb == 1:
            prob_red = (1.0 - p) * (1.0 - p)
            prob_blue = p * p
        elif ca == 1 and cb == 2:
            prob_red = 1.0 - p
            prob_blue = p
        else:
            prob_red = 0.0
            prob_blue = 0.0
        u = rng.next_double(rng.state)
        if u < prob_red:
            red = red + 1
        elif u < prob_red + prob_blue:
            blue = blue + 1
        else:
            green = green + 1
        total = total + 1
        if ci < ncp and cps[ci] == total:
            red_out[row, ci] = red
            blue_out[row, ci] = blue
            green_out[row, ci] = green
            ci = ci + 1


def run_urn_chunk(double p, int64_t n_max, int64_t[::1] checkpoints,
                  object bit_generators, Py_ssize_t lo, Py_ssize_t hi,
                  int64_t[:, ::1] red_out, int64_t[:, ::1] blue_out,
                  int64_t[:, ::1] green_out):
    """Simulate urn replicas ``lo..hi``; checkpoints index the ball total."""
    cdef Py_ssize_t r
    cdef bitgen_t *rng
    for r in range(lo, hi):
        rng = _bitgen_pointer(bit_generators[r])
        with nogil:
            _urn_one(p, n_max, checkpoints, rng, r, red_out, blue_out, green_out)
