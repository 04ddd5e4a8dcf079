"""Shared pytest fixtures."""

from __future__ import annotations

import pytest

from provcards.model import Document


@pytest.fixture(scope="session")
def tiny_corpus() -> list[Document]:
    return [
        Document(id="d1", title="Harbor shipments", body="Cargo manifests listed rifles and ammunition crates."),
        Document(id="d2", title="Bank transfers", body="Wire transfers moved funds between shell accounts."),
        Document(id="d3", title="Harbor schedule", body="The freighter docked at the harbor before midnight."),
    ]
