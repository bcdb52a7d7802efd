#pragma once

#include "topo_recon/embed.hpp"
#include "topo_recon/error.hpp"
#include "topo_recon/io.hpp"
#include "topo_recon/landmarks.hpp"
#include "topo_recon/mscan.hpp"
#include "topo_recon/persistence.hpp"
#include "topo_recon/random.hpp"
#include "topo_recon/signal.hpp"
#include "topo_recon/svg.hpp"
#include "topo_recon/witness.hpp"
