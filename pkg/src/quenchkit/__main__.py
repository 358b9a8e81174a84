from quenchkit.cli import entrypoint

entrypoint()
