"""Sifted fraction and error rate of qutrit key sifting versus depolarizing noise."""
from dataclasses import dataclass

import numpy as np
from _common import parse_config, write_rows

from spin1mub.protocol import qkd_sift


@dataclass
class Config:
    rounds: int = 100_000
    noise_steps: int = 11
    noise_max: float = 0.5
    seed: int = 7
    out: str = "-"


def main(cfg: Config):
    rows = []
    for n_bases in (2, 4):
        for noise in np.linspace(0, cfg.noise_max, cfg.noise_steps):
            r = qkd_sift(cfg.rounds, n_bases, seed=cfg.seed, noise=float(noise))
            rows.append({"n_bases": n_bases, "noise": float(noise), "sifted_fraction": r.sifted_fraction,
                         "qber": r.qber, "qber_expected": 2 * noise / 3})
    write_rows(rows, cfg.out)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
