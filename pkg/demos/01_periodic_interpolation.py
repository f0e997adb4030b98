"""Interpolating periodic functions from equispaced samples.

Walks through the basic objects: the 2n+1 uniform nodes, trigonometric
interpolation, and windowed quasi-interpolants that trade exactness on
polynomials for smaller kernels.
"""
import numpy as np

from latsamp import (approx_error, br_window, corpus, fejer_window, lagrange,
                     make_uniform_nodes, parse_operator, parse_spec,
                     quasi_interp)

np.set_printoptions(precision=4, suppress=True)
fns = corpus()

# --- nodes -----------------------------------------------------------------
# Degree-n trigonometric polynomials have 2n+1 degrees of freedom, so the
# sampling mesh carries 2n+1 points.
nodes = make_uniform_nodes(4)
print("nodes for n = 4:")
print(nodes.nodes)

# --- interpolation of a jump -----------------------------------------------
# The square wave is the classic rough target: its L2 interpolation error
# can only decay like n^(-1/2).
square = fns["square"]
l2 = parse_spec("l2")
op = parse_operator("lagrange")
print("\nsquare wave, Lagrange interpolation, L2 error:")
for n in (8, 16, 32, 64, 128):
    err = approx_error(square, op, n, l2)
    print(f"  n = {n:3d}   continuous = {err.continuous:.6f}   "
          f"discrete = {err.discrete:.2e}")
print("(the discrete part is ~0: interpolation matches every node value)")

# --- windows ---------------------------------------------------------------
# A window phi rescales the k-th coefficient by phi(k/n).  The flat window
# reproduces the interpolant; Fejer and Bochner-Riesz damp the band edges
# and give smoother kernels at the cost of the reproduction property.
cusp = fns["cusp15"]
print("\n|sin x/2|^(3/2)-type cusp, L2 error of windowed interpolants:")
print("       n      flat        fejer       br(1)")
for n in (8, 16, 32, 64, 128):
    row = [approx_error(cusp, parse_operator(o), n, l2).continuous
           for o in ("lagrange", "fejer", "br:1")]
    print(f"  {n:6d}   {row[0]:.6f}    {row[1]:.6f}    {row[2]:.6f}")
print("(fejer is first-order: it stalls at n^-1; br(1) keeps the full n^-2)")

# --- windowed interpolants are still sampling operators --------------------
T = lagrange(square, 8)
F = quasi_interp(square, 8, fejer_window())
B = quasi_interp(square, 8, br_window(1.0))
x = nodes.nodes
print("\nvalues at the n = 4 nodes (degree-8 operators):")
print("  interpolant :", np.real(T.at(x)))
print("  fejer       :", np.real(F.at(x)))
print("  br(1)       :", np.real(B.at(x)))
