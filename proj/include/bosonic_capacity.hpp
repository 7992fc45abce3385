#pragma once

#include "bosonic_capacity/broadband_pdc.hpp"
#include "bosonic_capacity/errors.hpp"
#include "bosonic_capacity/fock_oracle.hpp"
#include "bosonic_capacity/nonlinear.hpp"
#include "bosonic_capacity/numerics.hpp"
#include "bosonic_capacity/report.hpp"
#include "bosonic_capacity/thermal.hpp"
