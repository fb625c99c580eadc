from app.certify.codec import deserialize, serialize
from app.certify.models import Certificate, CheckResult, VerificationReport
from app.certify.verifier import verify

__all__ = ["Certificate", "CheckResult", "VerificationReport", "deserialize", "serialize", "verify"]
