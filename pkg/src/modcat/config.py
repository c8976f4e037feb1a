"""Option bundles shared by the CLI and the sweep scripts."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .linalg import Field


@dataclass(frozen=True)
class RunOptions:
    """Flags common to every CLI command."""

    field: Field | None = None     # None: use the workspace's own field
    seed: int = 0
    fmt: str = "json"

    @classmethod
    def from_args(cls, args) -> "RunOptions":
        return cls(Field.from_spec(args.field) if args.field else None, args.seed, args.format)


@dataclass(frozen=True)
class SweepConfig:
    """Sizes for the randomized roundtrip and finiteness sweeps."""

    seed: int = 0
    modules_per_algebra: int = 8
    reps_per_algebra: int = 8
    max_module_dim: int = 6
    max_rep_dim: int = 3
    functor_pairs: int = 4
    presheaf_modules_per_presheaf: int = 12

    def add_arguments(self, parser) -> None:
        for f in fields(self):
            parser.add_argument("--" + f.name.replace("_", "-"), type=int, default=getattr(self, f.name))

    @classmethod
    def from_args(cls, args) -> "SweepConfig":
        return cls(**{f.name: getattr(args, f.name) for f in fields(cls)})
