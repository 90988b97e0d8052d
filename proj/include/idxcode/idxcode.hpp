#pragma once

#include "idxcode/bounds.hpp"
#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/extraction.hpp"
#include "idxcode/field.hpp"
#include "idxcode/hfamily.hpp"
#include "idxcode/homsearch.hpp"
#include "idxcode/json_io.hpp"
#include "idxcode/lincode.hpp"
#include "idxcode/rational.hpp"
#include "idxcode/translate.hpp"
