// Convenience header pulling in the whole library.

#pragma once

#include "ballean/cache.hpp"
#include "ballean/config.hpp"
#include "ballean/fs.hpp"
#include "ballean/group.hpp"
#include "ballean/hamming.hpp"
#include "ballean/layers.hpp"
#include "ballean/sequence.hpp"
#include "ballean/so.hpp"
