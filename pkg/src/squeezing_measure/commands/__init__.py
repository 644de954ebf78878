#!filepath squeezing_measure/commands/__init__.py
from .command_factory import CommandFactory
from .base_command import BaseCommand
from .measure_command import MeasureCommand
from .bounds_command import BoundsCommand
from .decompose_command import DecomposeCommand
from .sweep_command import SweepCommand
from .gradcheck_command import GradcheckCommand

__all__ = [
    'CommandFactory',
    'BaseCommand',
    'MeasureCommand',
    'BoundsCommand',
    'DecomposeCommand',
    'SweepCommand',
    'GradcheckCommand'
]
