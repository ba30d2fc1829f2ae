# vortex/cli.py
"""Plumbing shared by the vortex management commands."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from .betti import Disk
from .cell_complex import CellComplex
from .complex_io import parse_document, resolve_input
from .exceptions import VortexError
from .proximity import Probe, get_probe
from .reports import render_report

logger = logging.getLogger(__name__)

# command -> (inputs needed, probe needed, output needed)
REQUIREMENTS: Dict[str, Tuple[Tuple[int, Optional[int]], bool, bool]] = {
    "analyze": ((1, 1), False, False),
    "nerve": ((1, 1), False, False),
    "betti": ((1, 1), False, False),
    "near": ((2, 2), True, False),
    "verify": ((0, None), False, False),
    "gen": ((0, 0), False, True),
    "render": ((1, 1), False, True),
}


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    inputs: Tuple[str, ...] = ()
    probe: Optional[str] = None
    tolerance: Optional[float] = None
    seed: Optional[int] = None
    output: Optional[str] = None

    def validate(self) -> "AnalysisRequest":
        """Check the flags a command needs before any computation starts."""
        if self.command not in REQUIREMENTS:
            raise CommandError(f"unknown command '{self.command}'")
        (low, high), needs_probe, needs_output = REQUIREMENTS[self.command]
        count = len(self.inputs)
        if count < low or (high is not None and count > high):
            expected = str(low) if low == high else f"{low} or more"
            raise CommandError(f"{self.command} takes {expected} input file(s), got {count}")
        if needs_probe and not self.probe:
            raise CommandError(f"{self.command} needs --probe")
        if needs_output and not self.output:
            raise CommandError(f"{self.command} needs -o/--output")
        if self.tolerance is not None and self.tolerance < 0:
            raise CommandError("tolerance must be non-negative")
        if self.probe:
            self.resolve_probe()
        return self

    @property
    def effective_seed(self) -> int:
        return int(self.seed if self.seed is not None else getattr(settings, "VORTEX_NERVE_SEED", 0))

    def resolve_probe(self) -> Probe:
        try:
            return get_probe(self.probe).with_eps(self.tolerance)
        except VortexError as exc:
            raise CommandError(str(exc)) from exc


def expand_inputs(paths: Sequence[str]) -> List[Path]:
    """Files as given; directories contribute their .cx files in name order."""
    out: List[Path] = []
    for raw in paths:
        p = resolve_input(raw)
        if p.is_dir():
            out.extend(sorted(p.glob("*.cx")))
        else:
            out.append(p)
    return out


def load_input(path: Union[str, Path]) -> Union[CellComplex, List[Disk]]:
    try:
        return parse_document(path)
    except VortexError as exc:
        raise CommandError(f"{path}: {exc}") from exc


def load_complex_input(path: Union[str, Path]) -> CellComplex:
    doc = load_input(path)
    if not isinstance(doc, CellComplex):
        raise CommandError(f"{path}: expected a complex, found a disk family")
    return doc


def emit(command: BaseCommand, payload: Dict[str, Any], output: Optional[str] = None) -> None:
    text = render_report(payload)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        command.stderr.write(command.style.SUCCESS(f"Report written to {output}"))
    else:
        command.stdout.write(text)
