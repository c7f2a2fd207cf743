"""Structured command reports with a canonical JSON form and a text form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str
    inputs: dict
    verdict: str
    witnesses: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION
    timings: dict | None = None

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "data": self.data,
            "schema_version": self.schema_version,
        }
        if with_timings and self.timings is not None:
            out["timings"] = self.timings
        return out

    def to_json(self, with_timings: bool = False) -> str:
        """Canonical rendering: sorted keys, two-space indent, trailing newline."""
        return json.dumps(self.to_dict(with_timings), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        raw = json.loads(text)
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {raw.get('schema_version')!r}")
        return cls(
            command=raw["command"],
            inputs=raw["inputs"],
            verdict=raw["verdict"],
            witnesses=raw["witnesses"],
            data=raw["data"],
            schema_version=raw["schema_version"],
            timings=raw.get("timings"),
        )

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"verdict: {self.verdict}"]
        if self.inputs:
            lines.append("inputs:")
            lines += _text_block(self.inputs, 1)
        if self.witnesses:
            lines.append("witnesses:")
            lines += _text_block(self.witnesses, 1)
        if self.data:
            lines.append("data:")
            lines += _text_block(self.data, 1)
        if self.timings:
            lines.append("timings:")
            lines += _text_block(self.timings, 1)
        return "\n".join(lines) + "\n"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _is_flat(v) -> bool:
    return not isinstance(v, (dict, list)) or (
        isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)
    )


def _text_block(value, depth: int) -> list[str]:
    pad = "  " * depth
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}: |")
                lines += [f"{pad}  {line}" for line in v.rstrip("\n").split("\n")]
            elif _is_flat(v):
                lines.append(f"{pad}{k}: {_scalar(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines += _text_block(v, depth + 1)
    elif isinstance(value, list):
        for item in value:
            if _is_flat(item):
                lines.append(f"{pad}- {_scalar(item)}")
            elif isinstance(item, dict) and all(_is_flat(v) for v in item.values()):
                lines.append(pad + "- " + ", ".join(f"{k}={_scalar(item[k])}" for k in sorted(item)))
            else:
                lines.append(f"{pad}-")
                lines += _text_block(item, depth + 1)
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines
