"""
Line-delimited results files.

    #nmls-results v1 seed=<u64> plan=<hex>
    <method> <function> <start_index> <status> <best_f> <f_evals> <g_evals> <evals:best_f,...>

One run per line. Reals use 17 significant digits so a read returns the
exact doubles that were written.
"""

import logging
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Union

from core.errors import InvalidParameter, SchemaMismatch
from core.records import RunRecord, RunStatus, RunSummary
from core.relaxation import RelaxationKind

logger = logging.getLogger(__name__)

SCHEMA = "nmls-results"
VERSION = "v1"
HEADER_RE = re.compile(r"^#(?P<schema>\S+) (?P<version>v\d+) seed=(?P<seed>\d+) plan=(?P<plan>[0-9a-f]*)$")
FIELDS = 8
EMPTY_TRACE = "-"


@dataclass
class ResultsFile:
    """Header values plus the run summaries of a results file."""
    master_seed: int
    plan: str
    records: List[RunSummary] = field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


def format_real(value: float) -> str:
    return format(float(value), ".17g")


def format_header(master_seed: int, plan: str) -> str:
    return f"#{SCHEMA} {VERSION} seed={master_seed} plan={plan}"


def format_line(run: Union[RunRecord, RunSummary]) -> str:
    if isinstance(run, RunRecord):
        run = run.summary()
    trace = ",".join(f"{evals}:{format_real(best)}" for evals, best in run.breakpoints)
    return " ".join([
        run.method.label,
        run.function,
        str(run.start_index),
        run.status.value,
        format_real(run.best_f),
        str(run.f_evals),
        str(run.g_evals),
        trace or EMPTY_TRACE,
    ])


def parse_line(line: str, lineno: int = 0) -> RunSummary:
    """
    Parse one record line.

    Raises:
        SchemaMismatch: if the line does not have the expected layout
    """
    parts = line.split()
    if len(parts) != FIELDS:
        raise SchemaMismatch(f"line {lineno}: expected {FIELDS} fields, found {len(parts)}")
    method, function, start, status, best_f, f_evals, g_evals, trace = parts
    try:
        breakpoints = []
        if trace != EMPTY_TRACE:
            for pair in trace.split(","):
                evals, best = pair.split(":")
                breakpoints.append((int(evals), float(best)))
        return RunSummary(
            method=RelaxationKind.parse(method),
            function=function,
            start_index=int(start),
            status=RunStatus(status),
            best_f=float(best_f),
            f_evals=int(f_evals),
            g_evals=int(g_evals),
            breakpoints=breakpoints,
        )
    except (ValueError, InvalidParameter) as e:
        raise SchemaMismatch(f"line {lineno}: {e}") from e


def write_records(path: str, records: Iterable[Union[RunRecord, RunSummary]],
                  master_seed: int, plan: str = "") -> int:
    """
    Write a results file, replacing any existing one.

    Args:
        path: Output file
        records: Runs in the order they should appear
        master_seed: Seed recorded in the header
        plan: Plan hash recorded in the header

    Returns:
        Number of records written
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_header(master_seed, plan) + "\n")
        for run in records:
            f.write(format_line(run) + "\n")
            count += 1
    logger.info(f"Wrote {count} records to {path}")
    return count


def read_header(line: str) -> Optional[re.Match]:
    match = HEADER_RE.match(line.rstrip("\n"))
    if match is None or match.group("schema") != SCHEMA:
        return None
    return match


def read_records(path: str) -> ResultsFile:
    """
    Read a results file written by ``write_records``.

    Raises:
        SchemaMismatch: on a missing or foreign header, an unknown version or a malformed line
        OSError: if the file cannot be read
    """
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline()
        header = read_header(first)
        if header is None:
            raise SchemaMismatch(f"{path}: missing or unrecognised results header")
        if header.group("version") != VERSION:
            raise SchemaMismatch(f"{path}: unsupported schema version {header.group('version')}")
        results = ResultsFile(master_seed=int(header.group("seed")), plan=header.group("plan"))
        for lineno, line in enumerate(f, start=2):
            if not line.strip():
                continue
            results.records.append(parse_line(line, lineno))
    logger.debug(f"Read {len(results)} records from {path}")
    return results
