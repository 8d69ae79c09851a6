#pragma once

#include "qacct/error.hpp"
#include "qacct/money.hpp"
#include "qacct/matrix.hpp"
#include "qacct/accounting.hpp"
#include "qacct/worksheet.hpp"
#include "qacct/leontief.hpp"
#include "qacct/quantum.hpp"
#include "qacct/bridge.hpp"
#include "qacct/qgje.hpp"
#include "qacct/io.hpp"
