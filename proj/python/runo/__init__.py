"""Python access to the runo poetry engine."""

import json

from ._core import (  # noqa: F401
    Poem,
    Profile,
    Resources,
    annotate_plain_text,
    assonance,
    consonance,
    export_pairs_jsonl,
    fast_nondominated_sort,
    fitness,
    full_rhyme,
    gate,
    likes,
    load_corpus,
    load_resources,
    parse_corpus,
    percentile,
    serialize_corpus,
    stanza_corpus,
    syllabify,
)
from . import _core


def evaluate(poem, resources):
    """Aesthetic values of a poem as a dict."""
    return json.loads(_core.evaluate_json(poem, resources))


def learn_profile(labelled, resources, era, seed=1):
    """Profile from (poem, is_target_era) pairs."""
    return Profile.from_json(_core.learn_profile_json(labelled, resources, era, seed))


def generate(seed_poem, theme, profile, resources, **config):
    """Run the master; keyword arguments override run config fields."""
    return json.loads(_core.generate_json(seed_poem, theme, profile, resources, json.dumps(config)))


def frame(poem, resources, seed=1):
    return json.loads(_core.frame_json(poem, resources, seed))
