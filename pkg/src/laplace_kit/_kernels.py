"""Hot inner loops for the truncated line integrals.

Every kernel has a numba version and a numpy version with identical
semantics.  The numba path is used when numba imports cleanly and the
environment variable ``LAPLACE_KIT_DISABLE_NUMBA`` is unset (or "0").
"""
import os

import numpy as np

_FLAG = "LAPLACE_KIT_DISABLE_NUMBA"

# numpy path keeps the phase matrix below this many entries per block
_BLOCK = 1 << 22


def _numba_requested():
    return os.environ.get(_FLAG, "0").strip().lower() in ("", "0", "false", "no")


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def phase_sum_numpy(s, wf, t, out):
    """out[k] += sum_j wf[j] * exp(i s[j] t[k])."""
    rows = max(1, _BLOCK // max(1, s.size))
    for k0 in range(0, t.size, rows):
        tk = t[k0:k0 + rows]
        out[k0:k0 + rows] += np.exp(1j * np.outer(tk, s)) @ wf
    return out


def phase_sum_uniform_numpy(s, wf, t0, dt, nt, out):
    """Same as ``phase_sum_numpy`` for the grid t_k = t0 + k*dt."""
    return phase_sum_numpy(s, wf, t0 + dt * np.arange(nt), out)


def real_phase_sum_numpy(s, wf, t, out):
    """out[k] += sum_j Re(wf[j] * exp(i s[j] t[k]))."""
    rows = max(1, _BLOCK // max(1, s.size))
    wr, wi = wf.real.copy(), wf.imag.copy()
    for k0 in range(0, t.size, rows):
        arg = np.outer(t[k0:k0 + rows], s)
        out[k0:k0 + rows] += np.cos(arg) @ wr - np.sin(arg) @ wi
    return out


if numba is not None:

    @numba.njit(cache=True, fastmath=False)
    def _phase_sum_nb(s, wf, t, out):
        for k in range(t.size):
            tk = t[k]
            acc_r = 0.0
            acc_i = 0.0
            for j in range(s.size):
                c = np.cos(s[j] * tk)
                si = np.sin(s[j] * tk)
                w = wf[j]
                acc_r += w.real * c - w.imag * si
                acc_i += w.real * si + w.imag * c
            out[k] += complex(acc_r, acc_i)
        return out

    @numba.njit(cache=True, fastmath=False)
    def _real_phase_sum_nb(s, wf, t, out):
        for k in range(t.size):
            tk = t[k]
            acc = 0.0
            for j in range(s.size):
                w = wf[j]
                acc += w.real * np.cos(s[j] * tk) - w.imag * np.sin(s[j] * tk)
            out[k] += acc
        return out

    @numba.njit(cache=True, fastmath=False)
    def _phase_sum_uniform_nb(s, wf, t0, dt, nt, out):
        # rotate the phase along the grid; re-anchor every 64 steps to
        # keep the recurrence drift at rounding level
        for j in range(s.size):
            sj = s[j]
            step = complex(np.cos(sj * dt), np.sin(sj * dt))
            k = 0
            while k < nt:
                tk = t0 + k * dt
                z = wf[j] * complex(np.cos(sj * tk), np.sin(sj * tk))
                stop = min(nt, k + 64)
                while k < stop:
                    out[k] += z
                    z *= step
                    k += 1
        return out

    def phase_sum_numba(s, wf, t, out):
        return _phase_sum_nb(s, wf, t, out)

    def real_phase_sum_numba(s, wf, t, out):
        return _real_phase_sum_nb(s, wf, t, out)

    def phase_sum_uniform_numba(s, wf, t0, dt, nt, out):
        return _phase_sum_uniform_nb(s, wf, float(t0), float(dt), int(nt), out)


def numba_active():
    return numba is not None and _numba_requested()


def phase_sum(s, wf, t, out):
    if numba_active():
        return phase_sum_numba(s, wf, t, out)
    return phase_sum_numpy(s, wf, t, out)


def real_phase_sum(s, wf, t, out):
    if numba_active():
        return real_phase_sum_numba(s, wf, t, out)
    return real_phase_sum_numpy(s, wf, t, out)


def phase_sum_uniform(s, wf, t0, dt, nt, out):
    if numba_active():
        return phase_sum_uniform_numba(s, wf, t0, dt, nt, out)
    return phase_sum_uniform_numpy(s, wf, t0, dt, nt, out)
