#pragma once

#include "histnorm/align.hpp"
#include "histnorm/corpus.hpp"
#include "histnorm/decoder.hpp"
#include "histnorm/edit.hpp"
#include "histnorm/error.hpp"
#include "histnorm/lm.hpp"
#include "histnorm/metrics.hpp"
#include "histnorm/significance.hpp"
#include "histnorm/synth.hpp"
#include "histnorm/tuner.hpp"
#include "histnorm/utf8.hpp"
#include "histnorm/version.hpp"
