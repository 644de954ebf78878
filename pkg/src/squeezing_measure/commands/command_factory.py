#!filepath squeezing_measure/commands/command_factory.py
from typing import Dict, List, Optional, TextIO, Type

from ..config import SolveOptions
from .base_command import BaseCommand
from .bounds_command import BoundsCommand
from .decompose_command import DecomposeCommand
from .gradcheck_command import GradcheckCommand
from .measure_command import MeasureCommand
from .sweep_command import SweepCommand


class CommandFactory:
    """Factory for creating sub-commands by name"""

    # Registry of command classes
    _command_classes: List[Type[BaseCommand]] = [
        MeasureCommand,
        BoundsCommand,
        DecomposeCommand,
        SweepCommand,
        GradcheckCommand,
    ]

    @classmethod
    def get_all_command_names(cls) -> Dict[str, Type[BaseCommand]]:
        """
        Collect all sub-command names from registered commands

        Returns:
            dict: Dictionary mapping names to command classes
        """
        names_map = {}
        for command_class in cls._command_classes:
            for name in command_class.get_names():
                names_map[name] = command_class
        return names_map

    @classmethod
    def can_handle(cls, name: str) -> bool:
        return name.lower() in cls.get_all_command_names()

    @classmethod
    def create_command(cls, name: str, options: SolveOptions, out: Optional[TextIO] = None) -> BaseCommand:
        """
        Create the command registered under a name

        Raises:
            KeyError: If no command handles the name
        """
        names_map = cls.get_all_command_names()
        key = name.lower()
        if key not in names_map:
            raise KeyError(f"Unknown command '{name}'")
        return names_map[key](options, out)

    @classmethod
    def register_command(cls, command_class: Type[BaseCommand]) -> None:
        """
        Register a new command class with the factory

        Args:
            command_class: A BaseCommand subclass to register
        """
        if command_class not in cls._command_classes:
            cls._command_classes.append(command_class)
