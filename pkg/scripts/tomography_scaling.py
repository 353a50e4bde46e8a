"""Mean trace-distance error of sampled MUB tomography versus shots per basis."""
from dataclasses import dataclass

import numpy as np
from _common import parse_config, write_rows

from spin1mub.protocol import generated_mub_set, measure_all, probabilities_from_counts, tomography, trace_distance


@dataclass
class Config:
    shots: tuple = (1_000, 10_000, 100_000, 1_000_000)
    states: int = 100
    phi: float = 0.37
    seed: int = 0
    out: str = "-"


def main(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    mubs = generated_mub_set(cfg.phi)
    psis = rng.normal(size=(cfg.states, 3)) + 1j * rng.normal(size=(cfg.states, 3))
    psis /= np.linalg.norm(psis, axis=1, keepdims=True)
    rows = []
    for n in cfg.shots:
        raw, proj = [], []
        for i, psi in enumerate(psis):
            rho = np.outer(psi, psi.conj())
            rec = tomography(probabilities_from_counts(measure_all(psi, cfg.phi, n, cfg.seed + i)), mubs)
            raw.append(trace_distance(rec.raw, rho))
            proj.append(trace_distance(rec.projected, rho))
        rows.append({"shots": n, "err_raw": np.mean(raw), "err_projected": np.mean(proj),
                     "err_raw_sqrtN": np.mean(raw) * np.sqrt(n)})
    write_rows(rows, cfg.out)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
