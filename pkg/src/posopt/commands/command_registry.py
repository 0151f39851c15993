"""Command registry for posopt subcommands."""

import logging
from typing import Any, Dict, List, Optional, Type

from ..errors import InputError
from ..sdp import Tolerances
from .base_command import BaseCommand

logger = logging.getLogger(__name__)


class CommandRegistry:
    """Registry mapping subcommand paths to command classes."""

    _commands: Dict[str, Type[BaseCommand]] = {}
    _initialized = False

    @classmethod
    def initialize(cls):
        """Initialize the registry by loading all built-in commands."""
        if cls._initialized:
            return

        cls._load_builtin_commands()
        cls._initialized = True

    @classmethod
    def _load_builtin_commands(cls):
        from .builtin import BUILTIN_COMMANDS

        for command_class in BUILTIN_COMMANDS:
            cls.register_command(command_class)
        logger.debug(f'Registered {len(cls._commands)} built-in commands')

    @classmethod
    def register_command(cls, command_class: Type[BaseCommand]):
        """Register a command class under its path."""
        if not issubclass(command_class, BaseCommand):
            raise ValueError(f"{command_class} must inherit from BaseCommand")

        instance = command_class()
        cls._commands[instance.command_path] = command_class

    @classmethod
    def get_command(cls, command_path: str, options: Optional[Dict[str, Any]] = None,
                    tol: Optional[Tolerances] = None) -> BaseCommand:
        """Get a command instance by path."""
        cls.initialize()

        path = ' '.join(command_path.replace('/', ' ').split())
        if path not in cls._commands:
            raise InputError(f"Unknown command: {command_path}")

        return cls._commands[path](options, tol)

    @classmethod
    def get_available_commands(cls) -> List[Dict[str, Any]]:
        """Get list of available commands with their metadata."""
        cls.initialize()

        return [command_class().to_dict() for _, command_class in sorted(cls._commands.items())]

    @classmethod
    def run_command(cls, command_path: str, options: Optional[Dict[str, Any]] = None,
                    tol: Optional[Tolerances] = None) -> Dict[str, Any]:
        """Validate the options and run a command."""
        command = cls.get_command(command_path, options, tol)
        command.validate_options(command.options)
        logger.info(f'Running {command.command_path}')
        return command.run()
