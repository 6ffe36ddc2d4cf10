"""
Report assembly for the management commands.

A report is a header (tool version, field context, config echo), a list of
flat records and a summary. JSON carries all three; CSV carries the records
only, one row each, with every non-text cell written as compact JSON so that
both encodings parse back to the same records.
"""

import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field

from spectra import __version__
from spectra.fields import context_summary, format_elem
from spectra.permutation import family_table, sigma_inverse_table
from spectra.pool import ordered_map
from spectra.reductions import normalization
from spectra.verifiers import FAIL, SKIP, run_suite
from spectra.walsh import (
    is_bent,
    labelled,
    predicted_distribution,
    predicted_value_sets,
    walsh_full,
)

logger = logging.getLogger(__name__)

TOOL = "inverse-bent-spectra"

# record fields holding plain text; CSV writes them unquoted by JSON
TEXT_FIELDS = frozenset(
    {
        "alpha",
        "branch",
        "family",
        "lemma_id",
        "sigma",
        "sigma_inverse",
        "status",
        "table",
        "x",
    }
)


@dataclass
class Report:
    command: str
    header: dict
    records: list
    summary: dict = field(default_factory=dict)

    def render(self, fmt="json"):
        if fmt == "csv":
            return render_csv(self)

        return render_json(self)


def build_header(ctx, command, config):
    return {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "context": context_summary(ctx),
        "config": config.echo(),
    }


def compact(value):
    return json.dumps(value, separators=(",", ":"), ensure_ascii=True)


def render_json(report):
    document = {
        "header": report.header,
        "records": report.records,
        "summary": report.summary,
    }
    return json.dumps(document, indent=2, ensure_ascii=True) + "\n"


def encode_cell(name, value):
    if name in TEXT_FIELDS and isinstance(value, str):
        return value

    return compact(value)


def decode_cell(name, text):
    if name in TEXT_FIELDS and not (text == "null" or text.startswith('"')):
        return text

    return json.loads(text)


def render_csv(report):
    if not report.records:
        return ""

    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(report.records[0]), lineterminator="\n")
    writer.writeheader()
    for record in report.records:
        writer.writerow({name: encode_cell(name, value) for name, value in record.items()})

    return buffer.getvalue()


def parse_csv(text):
    """Records back from ``render_csv`` output."""
    reader = csv.DictReader(io.StringIO(text))
    return [{name: decode_cell(name, cell) for name, cell in row.items()} for row in reader]


# -- records -----------------------------------------------------------------


def spectrum_record(ctx, alpha, spectrum, family="f"):
    return {
        "e": ctx.e,
        "alpha": format_elem(alpha),
        "family": family,
        "cube": ctx.is_cube(alpha),
        "bent": is_bent(spectrum),
        "histogram": labelled(spectrum.histogram),
        "inner": labelled(spectrum.inner),
        "outer": labelled(spectrum.outer),
    }


def matches_prediction(ctx, alpha, spectrum):
    cube = ctx.is_cube(alpha)
    inner, outer = predicted_value_sets(ctx.e, cube)

    return (
        spectrum.histogram == predicted_distribution(ctx.e, cube)
        and set(spectrum.inner) == inner
        and set(spectrum.outer) == outer
    )


def sweep_record(ctx, alpha, spectrum):
    record = spectrum_record(ctx, alpha, spectrum)
    record["predicted"] = labelled(predicted_distribution(ctx.e, ctx.is_cube(alpha)))
    record["match"] = matches_prediction(ctx, alpha, spectrum)

    return record


def _spectrum_of(ctx, alpha, family="f"):
    return walsh_full(ctx, family_table(ctx, alpha, family))


# -- commands ------------------------------------------------------------------


def cmd_spectrum(ctx, config):
    spectrum = _spectrum_of(ctx, config.alpha, config.family)
    record = spectrum_record(ctx, config.alpha, spectrum, config.family)

    return Report(
        command="spectrum",
        header=build_header(ctx, "spectrum", config),
        records=[record],
        summary={"records": 1, "bent": record["bent"]},
    )


def cmd_sweep(ctx, config):
    alphas = list(ctx.nonzero())
    spectra = ordered_map(lambda alpha: _spectrum_of(ctx, alpha), alphas, config.workers)
    records = [sweep_record(ctx, alpha, spectrum) for alpha, spectrum in zip(alphas, spectra)]
    cubes = sum(record["cube"] for record in records)

    return Report(
        command="sweep",
        header=build_header(ctx, "sweep", config),
        records=records,
        summary={
            "records": len(records),
            "cube": cubes,
            "noncube": len(records) - cubes,
            "bent": sum(record["bent"] for record in records),
            "matched": sum(record["match"] for record in records),
        },
    )


def cmd_table(ctx, config):
    records = []
    for branch, cube in (("noncube", False), ("cube", True)):
        alphas = [alpha for alpha in ctx.nonzero() if ctx.is_cube(alpha) == cube]
        spectra = ordered_map(lambda alpha: _spectrum_of(ctx, alpha), alphas, config.workers)
        representative = spectra[0]
        predicted = predicted_distribution(ctx.e, cube)
        inner, outer = predicted_value_sets(ctx.e, cube)
        records.append(
            {
                "branch": branch,
                "alpha": format_elem(alphas[0]),
                "alphas": len(alphas),
                "predicted": labelled(predicted),
                "computed": labelled(representative.histogram),
                "predicted_inner": sorted(inner),
                "computed_inner": sorted(representative.inner),
                "predicted_outer": sorted(outer),
                "computed_outer": sorted(representative.outer),
                "match": all(
                    matches_prediction(ctx, alpha, spectrum)
                    for alpha, spectrum in zip(alphas, spectra)
                ),
            }
        )

    return Report(
        command="table",
        header=build_header(ctx, "table", config),
        records=records,
        summary={
            "records": len(records),
            "matched": sum(record["match"] for record in records),
        },
    )


def cmd_verify(ctx, config, timing=False):
    started = time.perf_counter()
    results = run_suite(
        ctx,
        suite=config.suite,
        seed=config.seed,
        samples=config.samples,
        workers=config.workers,
    )
    failed = sum(result.status == FAIL for result in results)
    skipped = sum(result.status == SKIP for result in results)
    summary = {
        "checks": len(results),
        "passed": len(results) - failed - skipped,
        "failed": failed,
        "skipped": skipped,
        "instances": sum(result.checked for result in results),
        "normalization": normalization(ctx),
    }
    if timing:
        summary["wall_time_seconds"] = round(time.perf_counter() - started, 3)

    return Report(
        command="verify",
        header=build_header(ctx, "verify", config),
        records=[result.to_record() for result in results],
        summary=summary,
    )


def cmd_inverse(ctx, config):
    table = sigma_inverse_table(ctx)
    records = [
        {
            "x": ctx.format2(x),
            "sigma": ctx.format2(int(table.forward[x])),
            "sigma_inverse": ctx.format2(int(table.backward[x])),
        }
        for x in range(ctx.order)
    ]

    return Report(
        command="inverse",
        header=build_header(ctx, "inverse", config),
        records=records,
        summary={"records": len(records)},
    )


def cmd_truth_table(ctx, config):
    tt = family_table(ctx, config.alpha, config.family)
    record = {
        "e": ctx.e,
        "alpha": format_elem(config.alpha),
        "family": config.family,
        "bits": len(tt),
        "weight": tt.weight(),
        "table": tt.to_hex(),
    }

    return Report(
        command="truth_table",
        header=build_header(ctx, "truth_table", config),
        records=[record],
        summary={"records": 1},
    )
