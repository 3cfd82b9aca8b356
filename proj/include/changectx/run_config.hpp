#pragma once

#include "changectx/context_encoder.hpp"
#include "changectx/corpus.hpp"
#include "changectx/retrieval.hpp"
#include "changectx/slicer.hpp"

namespace changectx {

/// End-to-end pipeline configuration with the defaults every module
/// documents: depth 3, both edge kinds and directions, inter-procedural
/// on, 512-token input budget, 5..150-word messages, at most 20 changed
/// statements, 80/10/10 chronological split.
struct RunConfig {
    SliceConfig slice;
    int token_budget = 512;
    FilterLimits filters;
    SplitRatios split;

    EncodeOptions encode_options(bool include_context = true) const {
        EncodeOptions opts;
        opts.slice = slice;
        opts.token_budget = token_budget;
        opts.include_context = include_context;
        return opts;
    }
};

}  // namespace changectx
