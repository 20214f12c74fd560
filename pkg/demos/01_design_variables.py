"""Design variables and their physical realizations.

The optimizer works on five abstract variables: frontal area A, length l,
control fidelity u, relative dock entry area e, and docking tolerance eta.
This script derives the dimensionless three from concrete vehicle and dock
parameters, then inverts an abstract design back into hardware-level
numbers.
"""

import math

from dockopt import (DesignVector, DockGeometry, KinematicProfile,
                     control_fidelity, docking_tolerance, entry_area_fraction,
                     realize_design)

# ---------------------------------------------------------------------------
# Forward derivations: physical parameters -> abstract design variables.
# ---------------------------------------------------------------------------

# A vehicle with 4 independently controlled degrees of freedom and 5 cm of
# linear motion error, at 0.25 m^2 frontal area.
profile = KinematicProfile(dof_count=4, control_error_sigma=0.05,
                           authority_weight=1.0, accuracy_weight=1.0)
u = control_fidelity(profile, frontal_area=0.25)
print(f"control fidelity u = {u:.4f}  (authority 4/6, accuracy saturated)")

# A funnel dock approachable over a half-azimuth belt between 45 degrees
# and the equator of the approach sphere.
funnel = DockGeometry(theta1=0.0, theta2=math.pi,
                      phi1=math.pi / 4, phi2=math.pi / 2, clearance=0.12)
e = entry_area_fraction(funnel)
print(f"entry area fraction e = {e:.4f}  (narrow funnel)")

hangar = DockGeometry(0.0, 2 * math.pi, 0.0, math.pi / 2, clearance=0.12)
print(f"entry area fraction e = {entry_area_fraction(hangar):.4f}  "
      "(open hemisphere)")

# Tolerance: how much lateral clearance remains after one standard
# deviation of control error.
eta = docking_tolerance(funnel.clearance, profile.control_error_sigma)
print(f"docking tolerance eta = {eta:.4f}  "
      f"(D = {funnel.clearance} m, sigma = {profile.control_error_sigma} m)")

# ---------------------------------------------------------------------------
# Inverse realization: abstract design -> vehicle and dock parameters.
# ---------------------------------------------------------------------------

design = DesignVector(A=0.4, l=2.0, u=0.62, e=0.55, eta=0.8)
realized_profile, realized_geometry = realize_design(design,
                                                     sigma_c_target=0.1)
print("\nrealizing design", design)
print(f"  vehicle: {realized_profile.dof_count} controlled DOF, "
      f"sigma_c = {realized_profile.control_error_sigma:.4f} m")
print(f"  dock: azimuth span {realized_geometry.theta2:.4f} rad, "
      f"polar span {realized_geometry.phi2:.4f} rad, "
      f"clearance D = {realized_geometry.clearance:.4f} m")

# The round trip reproduces the abstract variables.
print("  round trip:",
      f"u = {control_fidelity(realized_profile, design.A):.6f},",
      f"e = {entry_area_fraction(realized_geometry):.6f},",
      f"eta = {docking_tolerance(realized_geometry.clearance, realized_profile.control_error_sigma):.6f}")
