"""Re-check a stored result envelope."""

from typing import Any, Dict, List

from ...errors import InputError
from ...utils.certificate_verifier import CertificateVerifier
from ..base_command import BaseCommand


class VerifyCommand(BaseCommand):
    """Recompute the residuals of a certificate without re-solving."""

    @property
    def command_path(self) -> str:
        return 'verify'

    @property
    def display_name(self) -> str:
        return 'Verify certificate'

    @property
    def description(self) -> str:
        return 'Check the digest and residuals of a stored result envelope'

    @property
    def required_options(self) -> List[str]:
        return ['certificate']

    def run(self) -> Dict[str, Any]:
        envelope = self.json_option('certificate')
        if not isinstance(envelope, dict):
            raise InputError('A certificate file holds one JSON object')
        status, residuals, error = CertificateVerifier(self.tol).verify(envelope)
        diagnostics: Dict[str, Any] = {'checked_command': envelope.get('command')}
        if error:
            diagnostics['error'] = error
        return {'verdict': status, 'certificate': {'residuals': residuals},
                'diagnostics': diagnostics}
