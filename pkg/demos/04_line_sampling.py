"""Sampling on the line: cardinal series and kernel quasi-interpolants.

Two reconstruction routes from samples f(k/sigma):

* the truncated Whittaker cardinal (sinc) series, exact for band-limited
  signals up to a certified truncation tail, and
* a windowed kernel series whose kernel integrates the window profile --
  never exact, but localized and insensitive to bandwidth assumptions.
"""
import numpy as np

from latsamp import bandlimited_signal, fejer_window, line_kernel, line_quasi, wks

np.set_printoptions(precision=3, suppress=True)

# --- certified sinc reconstruction -----------------------------------------
sig = bandlimited_signal(8.0)      # band [-16, 16]
sigma = 32.0                       # comfortably above the Nyquist rate
x = np.linspace(-4.0, 4.0, 801)
truth = sig(x)

print("truncated cardinal series, sigma = 32:")
for K in (64, 128, 256, 512):
    vals, bound = wks(sig, sigma, K, x)
    err = np.abs(vals - truth)
    print(f"  K = {K:4d}   sup error = {err.max():.3e}   "
          f"certified bound = {bound.max():.3e}   "
          f"bound holds: {bool(np.all(err <= bound))}")
print("(the bound comes from the signal's declared quadratic decay; outside")
print(" the certified zone |x| < (K+1)/sigma it reports inf, never a guess)")

# --- where the certificate ends --------------------------------------------
far = np.array([7.0, 8.0, 9.0])
_, bound_far = wks(sig, sigma, 256, far)
print(f"\nbound at x = {far} with K = 256: {bound_far}")

# --- kernel quasi-interpolation --------------------------------------------
# The triangle-window kernel has the closed form sinc(x/2pi)^2 / 2pi and its
# integer translates form a partition of unity, so constants survive exactly.
k0 = line_kernel(fejer_window(), np.array([0.0]))[0]
print(f"\ntriangle-window kernel at 0: {k0:.6f}  (= 1/2pi = {1/(2*np.pi):.6f})")

print("\nkernel series error on the same signal (no bandwidth certificate used):")
for sigma_q in (8.0, 16.0, 32.0, 64.0):
    vals = line_quasi(sig, sigma_q, 4096, x)
    err = np.abs(vals - truth)
    print(f"  sigma = {sigma_q:4.0f}   sup error = {err.max():.3e}")
print("(first-order accuracy in 1/sigma, like the periodic Fejer mean:")
print(" robust, but the window's kink at 0 caps the rate regardless of")
print(" how smooth the signal is)")
