"""Static exports of a summary: JSON, plain text, or a standalone HTML page."""

from __future__ import annotations

import html
import json
from pathlib import Path

from .segmenter import SegmentationParams
from .workspace import SummaryResponse, Workspace

EXPORT_FORMATS = ("json", "text", "html")


def to_json(response: SummaryResponse) -> str:
    return json.dumps(response.to_dict(), ensure_ascii=False, sort_keys=True, indent=2)


def to_text(response: SummaryResponse) -> str:
    """Overview sentences, then one prose block per card."""
    lines = [f"Session {response.session_id}", ""]
    for sentence in response.overview.sentences:
        lines.append(sentence.text)
    for warning in response.warnings:
        lines.append(f"[warning] {warning}")
    for i, card in enumerate(response.cards, start=1):
        lines.append("")
        lines.append(f"Card {i}")
        lines.append(card.prose)
    lines.append("")
    return "\n".join(lines)


def _card_html(index: int, card, segment) -> str:
    keywords = "".join(
        f'<span class="kw">{html.escape(term)}</span> '
        for term, _ in card.keywords
    )
    people = ", ".join(html.escape(name) for name, _ in card.people)
    places = ", ".join(html.escape(name) for name, _ in card.places)
    extras = ""
    if people:
        extras += f"<p><strong>People:</strong> {people}</p>"
    if places:
        extras += f"<p><strong>Places:</strong> {places}</p>"
    return (
        f'<section class="card"><h2>Card {index}</h2>'
        f'<p class="prose">{html.escape(card.prose)}</p>'
        f'<p class="keywords">{keywords}</p>{extras}</section>'
    )


def to_html(response: SummaryResponse) -> str:
    """Self-contained page: overview block on top, one section per card."""
    overview = "".join(
        f"<p>{html.escape(s.text)}</p>" for s in response.overview.sentences
    )
    warnings = "".join(
        f'<p class="warning">{html.escape(w)}</p>' for w in response.warnings
    )
    cards = "".join(
        _card_html(i, card, seg)
        for i, (card, seg) in enumerate(zip(response.cards, response.segments), start=1)
    )
    title = html.escape(response.session_id)
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Session summary: {title}</title>
<style>
body {{ font-family: system-ui, sans-serif; margin: 2rem auto; max-width: 60rem; }}
.overview {{ background: #fdf3c7; padding: 1rem; border-radius: 6px; }}
.card {{ border: 1px solid #ccc; border-radius: 6px; padding: 1rem; margin: 1rem 0; }}
.kw {{ background: #e2e8f0; border-radius: 4px; padding: 0 .4em; margin-right: .3em; }}
.warning {{ color: #92400e; }}
</style>
</head>
<body>
<h1>Session summary: {title}</h1>
<div class="overview">{overview}{warnings}</div>
{cards}
</body>
</html>
"""


def render(response: SummaryResponse, fmt: str) -> str:
    """Render the response as json, text, or html."""
    if fmt == "json":
        return to_json(response)
    if fmt == "text":
        return to_text(response)
    if fmt == "html":
        return to_html(response)
    raise ValueError(f"unknown export format {fmt!r}; expected one of {EXPORT_FORMATS}")


def export(
    workspace: Workspace,
    session_id: str,
    params: SegmentationParams | None,
    fmt: str,
    out: str | Path | None = None,
) -> str:
    """Summarize a session and render it; write to out when given."""
    rendered = render(workspace.run_pipeline(session_id, params), fmt)
    if out is not None:
        Path(out).write_text(rendered, encoding="utf-8")
    return rendered
