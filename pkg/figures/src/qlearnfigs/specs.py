"""Figure presets: which CSV columns each figure reads and how to style them.

The renderer is read-only over its inputs; these tables carry everything
figure-specific so `render` stays generic.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SeriesStyle:
    label: str
    color: str
    linestyle: str = "-"


@dataclass(frozen=True)
class InsetSpec:
    quantity: str       # CSV column plotted against tau
    corner: str         # "upper left" | "upper right" | "lower left" | "lower right"
    title: str


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    kind: str                        # "sweep" | "protocol" | "levels"
    title: str
    series: dict = field(default_factory=dict)   # series label -> SeriesStyle
    insets: tuple = ()
    ylabel: str = ""
    xlabel: str = ""


SPECS: dict[str, FigureSpec] = {
    "fig1": FigureSpec(
        figure_id="fig1",
        kind="protocol",
        title="Driving protocols",
        series={
            "lambda_exp": SeriesStyle("exponential ramp", "black"),
            "lambda_lin": SeriesStyle("linear ramp", "tab:orange"),
        },
        xlabel="t",
        ylabel="drive amplitude",
    ),
    "fig2": FigureSpec(
        figure_id="fig2",
        kind="sweep",
        title="Learning rate, driven oscillator (small drive)",
        series={
            "exact-exp": SeriesStyle("exact, exponential", "black", "-"),
            "exact-lin": SeriesStyle("exact, linear", "navy", "-"),
            "lin-exp": SeriesStyle("first order, exponential", "red", "--"),
            "lin-lin": SeriesStyle("first order, linear", "deepskyblue", "--"),
        },
        insets=(
            InsetSpec("delta_chi", "upper left", "information change"),
            InsetSpec("tau_qsl", "upper right", "speed-limit time"),
        ),
        xlabel="switching time",
        ylabel="learning rate",
    ),
    "fig3a": FigureSpec(
        figure_id="fig3a",
        kind="sweep",
        title="Exact vs first order, drive amplitude 0.3",
        series={
            "exact-exp": SeriesStyle("exact", "black", "-"),
            "lin-exp": SeriesStyle("first order", "red", "--"),
        },
        insets=(
            InsetSpec("delta_chi", "upper left", "information change"),
            InsetSpec("tau_qsl", "upper right", "speed-limit time"),
        ),
        xlabel="switching time",
        ylabel="learning rate",
    ),
    "fig3b": FigureSpec(
        figure_id="fig3b",
        kind="sweep",
        title="Exact vs first order, drive amplitude 0.5",
        series={
            "exact-exp": SeriesStyle("exact", "black", "-"),
            "lin-exp": SeriesStyle("first order", "red", "--"),
        },
        insets=(
            InsetSpec("delta_chi", "upper left", "information change"),
            InsetSpec("tau_qsl", "upper right", "speed-limit time"),
        ),
        xlabel="switching time",
        ylabel="learning rate",
    ),
    "fig4": FigureSpec(
        figure_id="fig4",
        kind="sweep",
        title="Learning rate, driven sech^2 well",
        series={
            "lin-exp": SeriesStyle("exponential ramp", "yellowgreen", "-"),
            "lin-lin": SeriesStyle("linear ramp", "darkgreen", "-"),
        },
        insets=(
            InsetSpec("delta_chi", "lower left", "information change"),
            InsetSpec("tau_qsl", "lower right", "speed-limit time"),
        ),
        xlabel="switching time",
        ylabel="learning rate",
    ),
    "fig5": FigureSpec(
        figure_id="fig5",
        kind="levels",
        title="sech^2 well and its harmonic stand-in",
        series={
            "pt": SeriesStyle("well", "tab:blue", "-"),
            "ho": SeriesStyle("harmonic stand-in", "black", "--"),
        },
        xlabel="x",
        ylabel="energy",
    ),
    "fig6": FigureSpec(
        figure_id="fig6",
        kind="sweep",
        title="Well vs harmonic stand-in",
        series={
            "pt": SeriesStyle("well", "tab:blue", "-"),
            "ho": SeriesStyle("harmonic stand-in", "black", "-"),
        },
        xlabel="switching time",
        ylabel="learning rate",
    ),
}
