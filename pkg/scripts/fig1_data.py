"""Mean-spin arrows and transverse squeezing for the Fourier and twisted bases."""
from dataclasses import dataclass

from _common import parse_config, write_rows

from spin1mub.cli import fig1_rows


@dataclass
class Config:
    out: str = "-"


def main(cfg: Config):
    write_rows(fig1_rows(), cfg.out)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
