"""Stable JSON envelope around a registry run."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

from ..errors import InputError
from ..sdp import Tolerances
from ..utils.serialization import inputs_digest, to_jsonable
from .command_registry import CommandRegistry

logger = logging.getLogger(__name__)


@dataclass
class CommandSpec:
    """One subcommand invocation: its path, options and output mode."""

    command: str
    options: Dict[str, Any] = field(default_factory=dict)
    output: str = 'json'

    def __post_init__(self):
        self.command = ' '.join(self.command.replace('/', ' ').split())
        if self.output not in ('json', 'text'):
            raise InputError(f'Unknown output mode {self.output!r}')

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> 'CommandSpec':
        """A batch record ``{command, options}``."""
        if not isinstance(record, dict) or 'command' not in record:
            raise InputError('Batch records need a "command" field')
        return cls(record['command'], dict(record.get('options') or {}))


def dispatch(spec: CommandSpec, tol: Optional[Tolerances] = None) -> Dict[str, Any]:
    """Run ``spec`` and wrap the result.

    The envelope is ``{command, inputs, inputs_digest, verdict, certificate?,
    diagnostics, timestamp}``; only ``timestamp`` varies between identical runs.
    Errors propagate to the caller.
    """
    options = to_jsonable(spec.options)
    result = CommandRegistry.run_command(spec.command, options, tol)
    envelope: Dict[str, Any] = {
        'command': spec.command,
        'inputs': options,
        'inputs_digest': inputs_digest(spec.command, options),
        'verdict': result['verdict'],
    }
    if result.get('certificate') is not None:
        envelope['certificate'] = result['certificate']
    envelope['diagnostics'] = result.get('diagnostics', {})
    envelope['timestamp'] = datetime.now(timezone.utc).isoformat()
    return to_jsonable(envelope)


def run_batch(specs: Sequence[CommandSpec], tol: Optional[Tolerances] = None,
              workers: int = 4) -> List[Dict[str, Any]]:
    """Dispatch independent specs on a thread pool; results keep input order.

    A failing record yields ``{command, error, type}`` instead of an envelope.
    """
    def run_one(spec: CommandSpec) -> Dict[str, Any]:
        try:
            return dispatch(spec, tol)
        except Exception as e:
            logger.warning(f'Batch record {spec.command!r} failed: {e}')
            return {'command': spec.command, 'error': str(e), 'type': type(e).__name__}

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(run_one, specs))
