"""Sweep the Werner family and write the datasets behind three plots.

fig1.csv
    Q_α(ρ(λ)) on the (λ, α) grid.
fig2.csv
    The normalized Brukner-Zeilinger information, Q_1/2, Q_1/3 and Q*, all
    divided by their pure state value, as functions of λ.  Two more columns
    hold L and the von Neumann entropy S, not normalized.
fig3.csv
    The critical α as a function of λ, with the literal ``degenerate`` where
    Q_α does not depend on α.

Next to each CSV file we write a gnuplot script that plots it.  We never
run gnuplot ourselves.
"""

from dataclasses import dataclass
from qumetrics.errors import QumetricsError
from qumetrics.measures import AlphaParameter
from qumetrics.measures import brukner_zeilinger
from qumetrics.measures import critical_alpha
from qumetrics.measures import DEGENERATE
from qumetrics.measures import luo_uncertainty
from qumetrics.measures import q_alpha
from qumetrics.measures import q_star
from qumetrics.measures import von_neumann_entropy
from qumetrics.states import werner
from qumetrics.utils import write_csv

import logging
import math
import numpy as np
import pathlib

logger = logging.getLogger(__name__)

HALF = AlphaParameter(0.5)
THIRD = AlphaParameter(1 / 3)

FIG1_HEADER = ("lambda", "alpha", "Q_alpha")
FIG2_HEADER = ("lambda", "I_BZ", "Q_1/2", "Q_1/3", "Q_star", "L", "S")
FIG3_HEADER = ("lambda", "alpha_c")

PLOT_SCRIPTS = {
    "fig1.gp": """\
set datafile separator ","
set terminal pngcairo size 800,600
set output "fig1.png"
set title "Q_alpha of the Werner state"
set xlabel "alpha"
set ylabel "lambda"
set zlabel "Q_alpha" rotate
set ticslevel 0
set dgrid3d {lambda_steps},{alpha_steps}
set hidden3d
splot "fig1.csv" using 2:1:3 skip 1 with lines notitle
""",
    "fig2.gp": """\
set datafile separator ","
set terminal pngcairo size 800,600
set output "fig2.png"
set title "Normalized measures of the Werner state"
set xlabel "lambda"
set ylabel "normalized value"
set yrange [0:1.05]
set key left top
plot "fig2.csv" using 1:2 skip 1 with lines title "(a) I_BZ", \\
     "fig2.csv" using 1:3 skip 1 with lines title "(b) Q_1/2 / 3", \\
     "fig2.csv" using 1:4 skip 1 with lines title "(c) Q_1/3 / 3", \\
     "fig2.csv" using 1:5 skip 1 with lines title "(d) Q* / 3"
""",
    "fig3.gp": """\
set datafile separator ","
set datafile missing "degenerate"
set terminal pngcairo size 800,600
set output "fig3.png"
set title "Critical alpha of the Werner state"
set xlabel "lambda"
set ylabel "alpha_c"
set yrange [0:0.5]
plot "fig3.csv" using 1:2 skip 1 with linespoints notitle
""",
}


@dataclass(frozen=True)
class ScanRow:
    """All measures of ρ(λ) the plots need.

    ``q_alpha`` holds Q_α on the α grid of the scan.  ``alpha_c`` is a float
    or ``DEGENERATE``.
    """

    lam: float
    q_alpha: tuple
    q_half: float
    q_third: float
    q_star: float
    luo: float
    brukner_zeilinger: float
    von_neumann: float
    alpha_c: object

    @property
    def normalization(self):
        # Pure state value of every Q on two qubits.
        return 3.0

    def fig1(self, alphas):
        return [(self.lam, alpha, value) for alpha, value in zip(alphas, self.q_alpha)]

    def fig2(self):
        return (
            self.lam,
            self.brukner_zeilinger,
            self.q_half / self.normalization,
            self.q_third / self.normalization,
            self.q_star / self.normalization,
            self.luo,
            self.von_neumann,
        )

    def fig3(self):
        return (self.lam, self.alpha_c)


def grid(start, stop, steps):
    """``steps`` evenly spaced points including both ends, as Python floats."""
    return [float(value) for value in np.linspace(start, stop, int(steps))]


def scan_row(lam, alphas, tol):
    rho = werner(lam)
    row = ScanRow(
        lam=float(lam),
        q_alpha=tuple(q_alpha(rho, alpha) for alpha in alphas),
        q_half=q_alpha(rho, HALF),
        q_third=q_alpha(rho, THIRD),
        q_star=q_star(rho),
        luo=luo_uncertainty(rho),
        brukner_zeilinger=brukner_zeilinger(rho),
        von_neumann=von_neumann_entropy(rho),
        alpha_c=critical_alpha(rho, tol),
    )
    values = list(row.q_alpha) + [
        row.q_half,
        row.q_third,
        row.q_star,
        row.luo,
        row.brukner_zeilinger,
        row.von_neumann,
    ]
    if row.alpha_c is not DEGENERATE:
        values.append(row.alpha_c)
    if not all(math.isfinite(value) for value in values):
        raise QumetricsError(f"non-finite measure for the Werner state at lambda={lam}")
    return row


def scan_werner(config, progress=None):
    """One ``ScanRow`` per λ of the configured grid.

    ``progress`` optionally wraps the iteration over λ.
    """
    lambdas = grid(config.lambda_min, config.lambda_max, config.lambda_steps)
    alphas = [
        AlphaParameter(alpha)
        for alpha in grid(config.alpha_min, config.alpha_max, config.alpha_steps)
    ]
    if progress is not None:
        lambdas = progress(lambdas)
    rows = []
    for lam in lambdas:
        rows.append(scan_row(lam, alphas, config.root_tol))
        logger.debug("lambda=%g alpha_c=%s", lam, rows[-1].alpha_c)
    return [float(alpha) for alpha in alphas], rows


def write_scan(out_dir, alphas, rows, config):
    """Write the three datasets and their plot scripts, return the paths."""
    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        write_csv(
            out_dir / "fig1.csv",
            FIG1_HEADER,
            [cell for row in rows for cell in row.fig1(alphas)],
        ),
        write_csv(out_dir / "fig2.csv", FIG2_HEADER, [row.fig2() for row in rows]),
        write_csv(out_dir / "fig3.csv", FIG3_HEADER, [row.fig3() for row in rows]),
    ]
    for name, template in PLOT_SCRIPTS.items():
        path = out_dir / name
        path.write_text(
            template.format(
                lambda_steps=config.lambda_steps, alpha_steps=config.alpha_steps
            )
        )
        written.append(path)
    return written
