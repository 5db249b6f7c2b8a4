# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 shooting kernel.

Integrates y'' = (V - lam) y together with its lam-derivative
z'' = (V - lam) z - y on a uniform mesh.  ``vfine`` holds V at every half
step, so a mesh of n steps needs 2n + 1 samples.
"""

cdef extern from "complex.h" nogil:
    double cabs(double complex)


def integrate(const double complex[::1] vfine, double complex lam, double h,
              double complex slope, double complex dslope,
              Py_ssize_t stride, double complex[::1] out=None):
    """Return (y, y', z, z', overflowed) at the right end of the mesh.

    ``out``, when given, receives y at every ``stride``-th mesh point.
    """
    cdef Py_ssize_t n = (vfine.shape[0] - 1) // 2
    cdef Py_ssize_t k
    cdef bint store = out is not None
    cdef bint overflow = False
    cdef double hh = 0.5 * h
    cdef double h6 = h / 6.0
    cdef double complex y = 0.0, p = slope, z = 0.0, r = dslope
    cdef double complex a0, a1, a2
    cdef double complex k1y, k1p, k1z, k1r, k2y, k2p, k2z, k2r
    cdef double complex k3y, k3p, k3z, k3r, k4y, k4p, k4z, k4r
    cdef double complex ty, tp, tz, tr

    if store and out.shape[0] != n // stride + 1:
        raise ValueError("output buffer has the wrong length")

    with nogil:
        if store:
            out[0] = y
        for k in range(n):
            a0 = vfine[2 * k] - lam
            a1 = vfine[2 * k + 1] - lam
            a2 = vfine[2 * k + 2] - lam

            k1y = p
            k1p = a0 * y
            k1z = r
            k1r = a0 * z - y

            ty = y + hh * k1y
            tp = p + hh * k1p
            tz = z + hh * k1z
            tr = r + hh * k1r
            k2y = tp
            k2p = a1 * ty
            k2z = tr
            k2r = a1 * tz - ty

            ty = y + hh * k2y
            tp = p + hh * k2p
            tz = z + hh * k2z
            tr = r + hh * k2r
            k3y = tp
            k3p = a1 * ty
            k3z = tr
            k3r = a1 * tz - ty

            ty = y + h * k3y
            tp = p + h * k3p
            tz = z + h * k3z
            tr = r + h * k3r
            k4y = tp
            k4p = a2 * ty
            k4z = tr
            k4r = a2 * tz - ty

            y = y + h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            p = p + h6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
            z = z + h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            r = r + h6 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)

            if store and (k + 1) % stride == 0:
                out[(k + 1) // stride] = y
                if not cabs(y) < 1e200:
                    overflow = True
                    break

    if not (cabs(y) < 1e200 and cabs(z) < 1e200):
        overflow = True
    return y, p, z, r, overflow
