#pragma once

#include "blockeq/matrix.hpp"
#include "blockeq/intmat.hpp"
#include "blockeq/poset.hpp"
#include "blockeq/blocked.hpp"
#include "blockeq/verdict.hpp"
#include "blockeq/search.hpp"
#include "blockeq/equiv.hpp"
#include "blockeq/sft.hpp"
#include "blockeq/quiver.hpp"
#include "blockeq/kweb.hpp"
#include "blockeq/io.hpp"
