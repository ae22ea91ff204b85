#pragma once

#include "rover/channel.hpp"
#include "rover/cli.hpp"
#include "rover/crc16.hpp"
#include "rover/drive.hpp"
#include "rover/engine.hpp"
#include "rover/error.hpp"
#include "rover/frame.hpp"
#include "rover/gateway.hpp"
#include "rover/geometry.hpp"
#include "rover/gesture.hpp"
#include "rover/random.hpp"
#include "rover/report.hpp"
#include "rover/run_record.hpp"
#include "rover/scenario.hpp"
#include "rover/sensors.hpp"
#include "rover/trace.hpp"
#include "rover/world.hpp"
