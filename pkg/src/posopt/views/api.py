"""API views for posopt."""

from flask import Blueprint, current_app, jsonify, request

from ..commands import CommandRegistry, CommandSpec, dispatch, run_batch
from ..errors import InfeasibleError, InputError, NumericalError
from ..sdp import Tolerances

bp = Blueprint('api', __name__)


def _tolerances() -> Tolerances:
    return Tolerances.from_config(current_app.config)


@bp.route('/commands')
def get_commands():
    """List every subcommand with its options."""
    return jsonify(CommandRegistry.get_available_commands())


@bp.route('/run/<path:command>', methods=['POST'])
def run_command(command):
    """Run one subcommand; the JSON body holds its options."""
    options = request.get_json(silent=True)
    if options is None:
        options = {}
    if not isinstance(options, dict):
        return jsonify({'error': 'Request body must be a JSON object', 'type': 'InputError'}), 400

    try:
        envelope = dispatch(CommandSpec(command, options), _tolerances())
    except InputError as e:
        return jsonify({'error': str(e), 'type': type(e).__name__}), 400
    except (NumericalError, InfeasibleError) as e:
        current_app.logger.warning(f'{command} failed numerically: {e}')
        return jsonify({'error': str(e), 'type': type(e).__name__}), 422

    current_app.logger.info(f'{envelope["command"]} -> {envelope["verdict"]}')
    return jsonify(envelope)


@bp.route('/batch', methods=['POST'])
def run_batch_records():
    """Run a list of ``{command, options}`` records in parallel."""
    records = request.get_json(silent=True)
    if not isinstance(records, list):
        return jsonify({'error': 'Request body must be a JSON list', 'type': 'InputError'}), 400

    try:
        specs = [CommandSpec.from_record(record) for record in records]
    except InputError as e:
        return jsonify({'error': str(e), 'type': type(e).__name__}), 400

    workers = current_app.config.get('POSOPT_WORKERS', 4)
    return jsonify(run_batch(specs, _tolerances(), workers))


@bp.errorhandler(404)
def not_found(error):
    """Handle 404 errors."""
    return jsonify({'error': 'Not found'}), 404


@bp.errorhandler(500)
def internal_error(error):
    """Handle 500 errors."""
    return jsonify({'error': 'Internal server error'}), 500
