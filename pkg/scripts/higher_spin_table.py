"""Flat-state mean spin and variances against the coherent and squeezing bounds."""
from dataclasses import asdict, dataclass

from _common import parse_config, write_rows

from spin1mub.squeezing import fourier_state_stats


@dataclass
class Config:
    d_min: int = 2
    d_max: int = 25
    out: str = "-"


def main(cfg: Config):
    rows = []
    for d in range(cfg.d_min, cfg.d_max + 1):
        r = asdict(fourier_state_stats(d))
        r["squeeze_ratio"] = r["var_y"] / r["squeeze_threshold"]
        rows.append(r)
    write_rows(rows, cfg.out)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
