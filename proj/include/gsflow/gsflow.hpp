#pragma once

#include "gsflow/cancellation.hpp"
#include "gsflow/error.hpp"
#include "gsflow/flow_model.hpp"
#include "gsflow/gs_complex.hpp"
#include "gsflow/int_matrix.hpp"
#include "gsflow/io.hpp"
#include "gsflow/morsification.hpp"
#include "gsflow/rca.hpp"
#include "gsflow/report.hpp"
#include "gsflow/spectral_sequence.hpp"
#include "gsflow/sssa.hpp"
