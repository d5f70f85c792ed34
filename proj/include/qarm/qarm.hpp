// Copyright 2026 The qarm-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qarm/apriori.hpp"
#include "qarm/circuit.hpp"
#include "qarm/histogram.hpp"
#include "qarm/oracle_synth.hpp"
#include "qarm/pipeline.hpp"
#include "qarm/qasm.hpp"
#include "qarm/qft.hpp"
#include "qarm/rational.hpp"
#include "qarm/report_json.hpp"
#include "qarm/statevector.hpp"
#include "qarm/transaction_db.hpp"
