from pathlib import Path

MANIFESTS = Path(__file__).resolve().parents[1] / "src" / "sympsum" / "manifests"
