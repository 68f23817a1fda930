#!/usr/bin/env python3
"""Generates the bundled synthetic focus-group transcripts.

Deterministic (fixed seed); produces quote-annotated text in the
[P#_S###] marker format. No real participant data anywhere: utterances
are assembled from fragment pools.

Usage:
  python3 scripts/make_synthetic_transcript.py data/focus_group_alpha.txt --words 10500 --seed 11
"""

import argparse
import random

OPENERS = [
    "Honestly,", "For us,", "Looking back,", "At first,", "These days,",
    "Early on,", "In our case,", "Most weeks,", "Some nights,", "Even now,",
]

SUBJECTS = [
    "my daughter", "my son", "our family", "my husband and I", "my wife and I",
    "our cardiologist", "the surgeon", "the care team", "the school nurse",
    "our youngest", "the whole household",
]

TOPICS = [
    ("diagnosis", [
        "the diagnosis came out of nowhere during a routine sports physical",
        "we waited three weeks for the diagnosis to be confirmed",
        "nobody explained what the diagnosis actually meant for daily life",
        "hearing the diagnosis felt like the floor dropped out",
        "the diagnosis letter was full of abbreviations we had to look up",
    ]),
    ("anxiety", [
        "the anxiety before every checkup still keeps me up at night",
        "her anxiety spikes whenever the monitor beeps",
        "we manage the anxiety by keeping a routine and writing questions down",
        "the waiting room anxiety never really goes away",
        "his anxiety about gym class took a full year to settle",
    ]),
    ("surgery", [
        "the surgery decision took months of second opinions",
        "after the surgery the recovery was faster than we feared",
        "we kept asking whether surgery now beats watchful waiting",
        "the night before the surgery nobody in the house slept",
        "the surgeon walked us through every step of the surgery twice",
    ]),
    ("insurance", [
        "the insurance paperwork swallowed entire weekends",
        "our insurance denied the first imaging request and we appealed",
        "switching jobs meant renegotiating insurance coverage mid-treatment",
        "the insurance caseworker never called back when promised",
        "billing codes and insurance letters arrive faster than explanations",
    ]),
    ("monitoring", [
        "the monitoring schedule means an echo every six months",
        "remote monitoring gave us a little bit of normal life back",
        "we track every monitoring result in a binder by date",
        "the monitoring appointments eat school days and work days alike",
        "each monitoring visit ends with the same cautious shrug",
    ]),
    ("school", [
        "the school needed a letter before he could rejoin recess",
        "we rehearse with the school what to do if she feels dizzy",
        "his school counselor checks in every Friday which helps",
        "gym exemptions at school made him feel singled out",
        "the school nurse keeps a copy of the emergency plan",
    ]),
    ("support", [
        "the support group of other parents saved our sanity",
        "online support forums answered questions the clinic never had time for",
        "grandparents are our backup support for appointment days",
        "we found support in one nurse who always told it straight",
        "peer support from another family a year ahead of us changed everything",
    ]),
    ("communication", [
        "clear communication from the team made the scary parts manageable",
        "we had to push for communication between cardiology and the pediatrician",
        "portal messages go unanswered so communication falls on us",
        "one resident drew the heart on a napkin and that communication stuck",
        "communication gaps between shifts meant retelling our story nightly",
    ]),
    ("future", [
        "thinking about the future means college forms with medical addendums",
        "we plan the future in six month blocks between scans",
        "her future feels open again after the last clear echo",
        "the future question nobody answers is what happens at forty",
        "we save for the future knowing one bad scan rewrites it",
    ]),
    ("guilt", [
        "the guilt of missing the early signs sits with me",
        "guilt creeps in when I snap after a long clinic day",
        "we talked through the guilt with a counselor eventually",
        "the guilt eased once we learned this is congenital not caused",
        "siblings carry a quiet guilt about getting less attention",
    ]),
]

CLOSERS = [
    "and that is just where we are right now.",
    "so we take it one appointment at a time.",
    "which is something other families should hear.",
    "and honestly it changed how we parent.",
    "but we are luckier than most, I know that.",
    "and the kids adapt faster than we do.",
    "so I write everything down now.",
    "and we keep showing up.",
]


CONNECTORS = [
    "said", "kept saying", "mentioned that", "admitted that", "told the group",
    "explained how", "realized", "learned that",
]


def build_utterance(rng: random.Random) -> str:
    topic, lines = TOPICS[rng.randrange(len(TOPICS))]
    parts = [rng.choice(OPENERS), rng.choice(SUBJECTS), rng.choice(CONNECTORS), rng.choice(lines)]
    if rng.random() < 0.55:
        _, extra_lines = TOPICS[rng.randrange(len(TOPICS))]
        parts.append("and on top of that " + rng.choice(extra_lines))
    parts.append(rng.choice(CLOSERS))
    sentence = " ".join(parts)
    del topic
    return sentence[0].upper() + sentence[1:]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("output")
    parser.add_argument("--words", type=int, default=10500)
    parser.add_argument("--seed", type=int, default=11)
    parser.add_argument("--participants", type=int, default=5)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    sequences = {p: 0 for p in range(1, args.participants + 1)}
    lines = []
    words = 0
    participant = 1
    while words < args.words:
        # speakers hold the floor for short runs, like a real session
        if rng.random() < 0.6:
            participant = rng.randrange(1, args.participants + 1)
        sequences[participant] += 1
        text = build_utterance(rng)
        lines.append(f"[P{participant}_S{sequences[participant]:03d}] {text}")
        words += len(text.split())

    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} utterances, {words} words -> {args.output}")


if __name__ == "__main__":
    main()
