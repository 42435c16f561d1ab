"""Driving adapters (primary adapters) for external actors.

These adapters translate external requests (here: the command line)
into domain operations using the driving ports.
"""

from .cli_adapter import CLIAdapter, ServiceBundle

__all__ = ["CLIAdapter", "ServiceBundle"]
