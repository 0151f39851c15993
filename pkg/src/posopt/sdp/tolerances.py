"""Centralized numerical tolerances."""

from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Mapping


@dataclass(frozen=True)
class Tolerances:
    """Tolerances shared by the solver and every certificate check.

    Attributes:
        feas_tol: relative primal/dual residual accepted as feasible.
        gap_tol: relative duality gap accepted as optimal.
        psd_tol: relative eigenvalue slack when testing semidefiniteness.
        rank_tol: relative singular value cut-off for numerical rank.
        factor_tol: relative pivot cut-off in the LDLᵀ factorization.
        infeas_tol: relative accuracy required of an infeasibility ray.
        cert_tol: accuracy to which returned certificates are verified.
        max_iter: interior-point iteration cap.
        step_fraction: fraction-to-boundary factor.
        lmi_margin: margin emulating strict LMIs.
        seed: seed for randomized searches.
    """

    feas_tol: float = 1e-8
    gap_tol: float = 1e-7
    psd_tol: float = 1e-9
    rank_tol: float = 1e-7
    factor_tol: float = 1e-10
    infeas_tol: float = 1e-8
    cert_tol: float = 1e-6
    max_iter: int = 100
    step_fraction: float = 0.98
    lmi_margin: float = 1e-7
    seed: int = 0

    @classmethod
    def from_config(cls, cfg: Any) -> 'Tolerances':
        """Build from a config class (see ``posopt.config.settings``) or a Flask config mapping."""
        def get(key: str, default: Any) -> Any:
            if isinstance(cfg, Mapping):
                return cfg.get(key, default)
            return getattr(cfg, key, default)

        return cls(
            feas_tol=get('POSOPT_FEAS_TOL', cls.feas_tol),
            gap_tol=get('POSOPT_GAP_TOL', cls.gap_tol),
            psd_tol=get('POSOPT_PSD_TOL', cls.psd_tol),
            rank_tol=get('POSOPT_RANK_TOL', cls.rank_tol),
            max_iter=get('POSOPT_MAX_ITER', cls.max_iter),
            step_fraction=get('POSOPT_STEP_FRACTION', cls.step_fraction),
            lmi_margin=get('POSOPT_LMI_MARGIN', cls.lmi_margin),
            seed=get('POSOPT_SEED', cls.seed),
        )

    def with_changes(self, **changes) -> 'Tolerances':
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
