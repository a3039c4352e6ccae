#pragma once

#include "hashrec/baselines.hpp"
#include "hashrec/bll.hpp"
#include "hashrec/content_model.hpp"
#include "hashrec/corpus.hpp"
#include "hashrec/error.hpp"
#include "hashrec/evaluation.hpp"
#include "hashrec/io.hpp"
#include "hashrec/metrics.hpp"
#include "hashrec/ranking.hpp"
#include "hashrec/reuse_analysis.hpp"
#include "hashrec/synth.hpp"
#include "hashrec/usage_index.hpp"
