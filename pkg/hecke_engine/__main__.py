import sys

from pydantic import ValidationError

try:
    from hecke_engine.cli import main
except ValidationError as e:
    # settings are read at import time
    print(f"error: invalid HECKE_* setting: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}", file=sys.stderr)
    sys.exit(2)

sys.exit(main())
