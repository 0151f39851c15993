"""Subcommand registry and dispatch."""

from .base_command import BaseCommand
from .command_registry import CommandRegistry
from .dispatch import CommandSpec, dispatch, run_batch

__all__ = ['BaseCommand', 'CommandRegistry', 'CommandSpec', 'dispatch', 'run_batch']
