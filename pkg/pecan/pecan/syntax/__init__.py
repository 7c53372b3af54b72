"""Pecan source language: syntax trees, parser, desugaring and printing"""

from pecan.syntax.desugar import Desugarer, desugar
from pecan.syntax.parser import parse, parse_formula
from pecan.syntax.printer import show

__all__ = ["Desugarer", "desugar", "parse", "parse_formula", "show"]
