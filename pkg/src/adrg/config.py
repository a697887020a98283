from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical knobs.

    ``eig_group``: relative gap at or below which sorted raw eigenvalues are
    merged into one distinct eigenvalue. ``match``: absolute tolerance for
    comparing matrices (idempotent identities, p_i(A) against A_h, spreads of
    crossed multiplicities). ``bound``: relative tolerance for equality in the
    distance-degree bounds.
    """

    eig_group: float = 1e-9
    match: float = 1e-7
    bound: float = 1e-6
    max_n: int = 512

    def __post_init__(self):
        for name in ("eig_group", "match", "bound"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")
        if self.max_n < 2:
            raise ValueError("max_n must be at least 2")

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
