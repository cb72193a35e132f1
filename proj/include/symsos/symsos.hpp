// Umbrella header.
#pragma once

#include "symsos/certificate.hpp"
#include "symsos/facial.hpp"
#include "symsos/fixtures.hpp"
#include "symsos/molien.hpp"
#include "symsos/pipeline.hpp"
