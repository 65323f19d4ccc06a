"""Text-to-model pipeline shared by the CLI and the benchmark."""
from __future__ import annotations

from typing import Iterable

from .engine import WellFoundedModel, well_founded_model
from .grounder import ground
from .parser import parse_program
from .syntax import Atom, Program, sort_atoms


def solve_program(program: Program, grounding: str = "relevant") -> WellFoundedModel:
    g = program if program.is_ground() else ground(program, grounding)
    return well_founded_model(g)


def solve_text(text: str, grounding: str = "relevant") -> WellFoundedModel:
    return solve_program(parse_program(text), grounding)


def render_atoms(atoms: Iterable[Atom]) -> str:
    return "{" + ", ".join(str(a) for a in sort_atoms(atoms)) + "}"


def render_model(true: Iterable[Atom], undefined: Iterable[Atom]) -> str:
    return f"True: {render_atoms(true)}\nUndefined: {render_atoms(undefined)}\n"
