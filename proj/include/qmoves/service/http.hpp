/*
 Copyright 2026 The qmoves Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

namespace httplib {
class Server;
}

namespace qmoves::service {

class GameService;

/// Registers the JSON endpoints of `service` on `server`:
///
///   GET    /levels
///   POST   /levels/{id}/trajectories        {path, client_fidelity}
///   GET    /levels/{id}/leaderboard?limit=N
///   GET    /levels/{id}/export
///   POST   /levels/{id}/import               exported bundle
///   GET    /records/{id}
///   POST   /chop/jobs                        {level_id, record_ids?, selection?}
///   GET    /chop/jobs/{id}
///   POST   /levels/{id}/sessions
///   GET    /sessions/{id}
///   POST   /sessions/{id}/ticks              {t, x0, amp} or {ticks: [...]}
///   POST   /sessions/{id}/submit             {client_fidelity?}
///   DELETE /sessions/{id}
///
/// Submissions need `Authorization: Bearer <token>`. Errors are
/// {error, violations?} with 400, 401, 404, 409, 422 or 503.
void mount_routes(httplib::Server& server, GameService& service);

}  // namespace qmoves::service
