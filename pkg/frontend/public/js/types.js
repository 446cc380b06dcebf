// Wire types mirroring the service JSON payloads, field for field.
export {};
