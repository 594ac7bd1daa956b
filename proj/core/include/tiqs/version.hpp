#pragma once

#define TIQS_VERSION_MAJOR 0
#define TIQS_VERSION_MINOR 1
#define TIQS_VERSION_PATCH 0
#define TIQS_VERSION_STRING "0.1.0"
