"""Exception hierarchy. Each class maps to one CLI exit code."""


class DistOrderError(Exception):
    """Base class for library errors."""

    exit_code = 1


class NonConvergent(DistOrderError):
    exit_code = 4


class Overflow(DistOrderError):
    exit_code = 4


class BranchCut(DistOrderError, ValueError):
    exit_code = 2


class DegenerateLattice(DistOrderError):
    exit_code = 3


class DegenerateMode(DistOrderError):
    """|h(a, lambda_n)| fell below the division floor in the initial-value solve."""

    exit_code = 5

    def __init__(self, n, magnitude):
        super().__init__(f"degenerate mode n={n}: |h(a, lambda_n)| = {magnitude:.3e}")
        self.n = n
        self.magnitude = magnitude


class NonDegeneracyViolated(DistOrderError):
    """a0 h(a, lambda_m) + b0 h(b, lambda_m) vanished (to the floor) for some m."""

    exit_code = 5

    def __init__(self, m, magnitude):
        super().__init__(
            f"non-degeneracy violated at m={m}: |a0 h(a,lambda_m) + b0 h(b,lambda_m)| = {magnitude:.3e}"
        )
        self.m = m
        self.magnitude = magnitude


class GridTooCoarse(DistOrderError, ValueError):
    exit_code = 2


class IndexOutOfRange(DistOrderError, IndexError):
    exit_code = 2
