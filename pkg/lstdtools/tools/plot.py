import logging

from lstdtools.evaluation.svg import chart_from_table
from lstdtools.tools import lpt
from lstdtools.tools import stdargs

TOOLNAME = "plot"
TOOLTIP = "Draw an SVG line chart of a run, bench or sweep CSV"


def parse(extend=None, args=None):
    return (
        stdargs.Parser("Plot results")
        .add("csv", help="CSV written by run, bench or sweep")
        .add("-o", "--out", required=True, metavar="chart.svg", help="write to this file")
        .add("--x", help="column for the x axis, n by default")
        .add("--y", help="column for the y axis, root_msve or median_seconds by default")
        .add("--title", default="", help="chart title")
        .extend(extend)
        .parse(args)
    )


def process_args(args):
    df = lpt.read_csv(args.csv)
    svg = chart_from_table(df, x=args.x, y=args.y, title=args.title)
    with open(args.out, "w", encoding="utf-8", newline="\n") as file:
        file.write(svg)
    logging.info(f"wrote {args.out}")


# Standalone tool
def main(parse=parse, display_df=lpt.display_df):
    return lpt.standard_flow(parse, process_args, display_df)
