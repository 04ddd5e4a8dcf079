/** DOM builders for the overview banner and the segment card grid. */
const el = (tag, className, text) => {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text !== undefined)
        node.textContent = text;
    return node;
};
/** Percentage string with trailing zeros trimmed ("50%", "33.3333%"). */
const pct = (x) => `${+x.toFixed(4)}%`;
const SLOT_CLASSES = {
    searches: "slot slot-search",
    docs: "slot slot-document",
    keywords: "slot slot-keyword",
    people: "slot slot-entity",
    places: "slot slot-entity",
};
/** Render `text` with its spans wrapped, appending into `parent`. */
function appendSpannedText(parent, text, spans) {
    const ordered = [...spans].sort((a, b) => a.start - b.start);
    let cursor = 0;
    for (const span of ordered) {
        if (span.start > cursor)
            parent.append(text.slice(cursor, span.start));
        const node = el("span", "slot", text.slice(span.start, span.end));
        if (span.link_key !== null) {
            if (span.link_key.startsWith("segment:")) {
                node.className = "slot ov-link";
                node.dataset.segment = span.link_key.slice("segment:".length);
            }
            else {
                node.className = SLOT_CLASSES[span.link_key] ?? "slot";
            }
        }
        node.dataset.slot = span.slot;
        parent.append(node);
        cursor = span.end;
    }
    if (cursor < text.length)
        parent.append(text.slice(cursor));
}
/** Yellow overview banner; hidden when there are no sentences. */
export function renderOverview(overview, banner) {
    banner.replaceChildren();
    if (overview.sentences.length === 0) {
        banner.classList.add("hidden");
        return;
    }
    banner.classList.remove("hidden");
    for (const sentence of overview.sentences) {
        const p = el("p", "ov-sentence");
        appendSpannedText(p, sentence.text, sentence.spans);
        banner.append(p);
    }
}
function keywordChips(card) {
    const wrap = el("div", "keywords");
    for (const [term] of card.keywords) {
        const chip = el("span", "kw", term);
        chip.dataset.term = term;
        wrap.append(chip);
    }
    return wrap;
}
function listSection(title, className, items, tooltip) {
    const section = el("section", `list-section ${className}`);
    section.dataset.tooltip = tooltip;
    section.append(el("h3", "list-title", title));
    const ul = el("ul");
    for (const item of items)
        ul.append(el("li", undefined, item));
    section.append(ul);
    return section;
}
function cardLists(card) {
    const wrap = el("div", "lists");
    if (card.searches.length > 0) {
        wrap.append(listSection(`Searches (${card.counts["Search"] ?? 0})`, "list-search", card.searches, card.searches.join("\n")));
    }
    if (card.docs_opened.length > 0) {
        const titles = card.docs_opened.map(([, title]) => title);
        wrap.append(listSection(`Documents (${card.counts["DocOpen"] ?? 0})`, "list-document", titles, titles.join("\n")));
    }
    if (card.keywords.length > 0) {
        const section = el("section", "list-section list-keyword");
        section.append(el("h3", "list-title", "Keywords"));
        section.append(keywordChips(card));
        wrap.append(section);
    }
    const named = (pairs) => pairs.map(([name, count]) => `${name} (${count})`);
    if (card.people.length > 0) {
        wrap.append(listSection("People", "list-entity", named(card.people), ""));
    }
    if (card.places.length > 0) {
        wrap.append(listSection("Places", "list-entity", named(card.places), ""));
    }
    if (card.highlights.length > 0) {
        wrap.append(listSection("Highlights", "list-quote", card.highlights, ""));
    }
    if (card.notes.length > 0) {
        wrap.append(listSection("Notes", "list-quote", card.notes, ""));
    }
    return wrap;
}
function buildCard(card, mode, spanStart, spanLength) {
    const article = el("article", "card");
    article.dataset.segmentIndex = String(card.segment_index);
    const track = el("div", "time-track");
    const bar = el("div", "time-bar");
    if (spanLength > 0) {
        bar.style.left = pct(((card.t_start - spanStart) / spanLength) * 100);
        bar.style.width = pct(((card.t_end - card.t_start) / spanLength) * 100);
    }
    else {
        bar.style.left = "0%";
        bar.style.width = "100%";
    }
    track.append(bar);
    article.append(track);
    article.append(el("h2", "card-title", `Card ${card.segment_index + 1}`));
    if (mode === "prose") {
        const p = el("p", "prose");
        appendSpannedText(p, card.prose, card.prose_spans);
        article.append(p, keywordChips(card));
    }
    else {
        article.append(cardLists(card));
    }
    return article;
}
/** Render the card grid in time order; count always equals the API's cards length. */
export function renderCards(summary, mode, grid) {
    grid.replaceChildren();
    const cards = [...summary.cards].sort((a, b) => a.start - b.start);
    const spanStart = Math.min(...cards.map((c) => c.t_start));
    const spanEnd = Math.max(...cards.map((c) => c.t_end));
    for (const card of cards) {
        grid.append(buildCard(card, mode, spanStart, spanEnd - spanStart));
    }
}
/** Brush-and-link: highlight exactly the cards listed for `term`; null clears. */
export function applyBrush(term, linkIndex, grid) {
    const linked = term !== null ? new Set(linkIndex[term] ?? []) : new Set();
    for (const card of grid.querySelectorAll(".card")) {
        card.classList.toggle("linked", linked.has(Number(card.dataset.segmentIndex)));
    }
}
/** Overview-hover highlight of one named card; null clears. */
export function applyCardHighlight(segmentIndex, grid) {
    for (const card of grid.querySelectorAll(".card")) {
        card.classList.toggle("highlight", Number(card.dataset.segmentIndex) === segmentIndex);
    }
}
/** Delegated hover wiring for brushable keyword chips; installed once. */
export function wireBrush(grid, onTerm) {
    grid.addEventListener("mouseover", (ev) => {
        const chip = ev.target.closest("[data-term]");
        if (chip?.dataset.term)
            onTerm(chip.dataset.term);
    });
    grid.addEventListener("mouseout", (ev) => {
        const chip = ev.target.closest("[data-term]");
        if (chip)
            onTerm(null);
    });
}
/** Delegated hover wiring for overview sentence links to cards; installed once. */
export function wireOverviewHover(banner, grid) {
    banner.addEventListener("mouseover", (ev) => {
        const link = ev.target.closest(".ov-link");
        if (link?.dataset.segment)
            applyCardHighlight(Number(link.dataset.segment), grid);
    });
    banner.addEventListener("mouseout", (ev) => {
        const link = ev.target.closest(".ov-link");
        if (link)
            applyCardHighlight(null, grid);
    });
}
/** Delegated tooltip for list sections; shows the section's item list on hover. */
export function wireTooltip(grid, tooltip) {
    grid.addEventListener("mouseover", (ev) => {
        const section = ev.target.closest("[data-tooltip]");
        const text = section?.dataset.tooltip;
        if (!text)
            return;
        tooltip.textContent = text;
        tooltip.classList.remove("hidden");
        const mouse = ev;
        tooltip.style.left = `${(mouse.clientX || 0) + 12}px`;
        tooltip.style.top = `${(mouse.clientY || 0) + 12}px`;
    });
    grid.addEventListener("mouseout", (ev) => {
        const section = ev.target.closest("[data-tooltip]");
        if (section)
            tooltip.classList.add("hidden");
    });
}
