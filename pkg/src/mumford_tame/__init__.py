"""Hyperelliptic Mumford curves over Q_p with tame p-torsion.

Core modules: padic (exact scalar arithmetic), geometry (Mobius maps and
discs), whittaker (group construction and curve models), period (period
matrices and bounds), tame (certified constructions and CRT gluing), galois
(Goldbach searches and polynomial types), frobenius (point counts and
characteristic polynomials).  The service subpackage exposes the pipelines
over HTTP; cli is the thin command-line client.
"""

__version__ = "0.1.0"
