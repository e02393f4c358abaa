/**
 * @file fixtures.h
 *
 * The train-connection example and the three-hop example used across tests.
 */
#pragma once

#include "whyprov/model.h"
#include "whyprov/storage.h"

#include <string>

namespace fixtures {

/** Q(X,Y): cities reachable with exactly one change but not directly. */
extern const char* const kTrainProgram;

whyprov::Program trainProgram();
/** Train = {(n,w),(n,c),(c,s),(s,c),(w,s)}. */
whyprov::Instance trainInstance();
/** Both Train attributes share one domain {c,n,s,w}. */
whyprov::DomainConfig groupedTrain();

extern const char* const kThreeHopProgram;
whyprov::Program threeHopProgram();
/** hop = {(a,a),(a,b),(b,a),(b,c)}. */
whyprov::Instance threeHopInstance();

whyprov::ProvenanceQuestion question(const std::string& text, const whyprov::Program& program);

}  // namespace fixtures
