#pragma once

#include "vgrp/battery.hpp"
#include "vgrp/builders.hpp"
#include "vgrp/descent.hpp"
#include "vgrp/document.hpp"
#include "vgrp/error.hpp"
#include "vgrp/factorization.hpp"
#include "vgrp/group.hpp"
#include "vgrp/quantale.hpp"
#include "vgrp/report.hpp"
#include "vgrp/torsion.hpp"
#include "vgrp/vgroup.hpp"
#include "vgrp/vrel.hpp"
