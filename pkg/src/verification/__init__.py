# src/verification/__init__.py
from .verification_runner import LEVELS, VerificationRunner
