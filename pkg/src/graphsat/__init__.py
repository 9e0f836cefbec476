"""Satisfiability and entailment for relational theories via graph saturation."""

from .errors import GraphSatError, MalformedMapError, ModelError, ParseError, ReservedLabelError
from .graph import BOT, GOAL, ID, TOP, Edge, Graph, Label, LabelKind, atom, const
from .model import StandardModel, check_standard, extract_standard_model
from .procedures import (Consistent, Entailed, Inconsistent, NotEntailed, Unknown, check_consistency,
                         check_entailment)
from .saturate import ChainState, SaturationResult, Status, saturate
from .terms import Eq, Sub, Theory, eval_semantics, holds, parse_sentence, parse_term, parse_theory
from .translate import GraphRule, compile_theory, translate_subsumption, translate_term

__all__ = [
    "GraphSatError", "MalformedMapError", "ModelError", "ParseError", "ReservedLabelError",
    "BOT", "GOAL", "ID", "TOP", "Edge", "Graph", "Label", "LabelKind", "atom", "const",
    "StandardModel", "check_standard", "extract_standard_model",
    "Consistent", "Entailed", "Inconsistent", "NotEntailed", "Unknown", "check_consistency", "check_entailment",
    "ChainState", "SaturationResult", "Status", "saturate",
    "Eq", "Sub", "Theory", "eval_semantics", "holds", "parse_sentence", "parse_term", "parse_theory",
    "GraphRule", "compile_theory", "translate_subsumption", "translate_term",
]
