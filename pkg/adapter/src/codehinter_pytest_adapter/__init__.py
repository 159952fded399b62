"""pytest adapter for codehinter: per-test line coverage + outcomes as traces."""

__version__ = "0.1.0"

ADAPTER_NAME = f"codehinter-pytest-adapter/{__version__}"
SCHEMA_VERSION = "codehinter-trace/1"
