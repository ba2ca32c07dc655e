import { beforeEach, describe, expect, it } from 'vitest'

import { ApiClient } from '../src/api.js'
import { AppController } from '../src/controller.js'
import { StubServer } from './stub_server.js'

describe('keyword exclusion', () => {
  let server: StubServer
  let controller: AppController

  beforeEach(async () => {
    server = new StubServer()
    server.addPiece('relaxing', 'Relaxing', ['calm'])
    server.addPiece('night', 'Night piece', ['calm', 'night'])
    server.addPiece('march', 'March', [])
    controller = new AppController(new ApiClient(server.fetch))
    await controller.load()
  })

  it('unchecking a keyword removes matching pieces from the play-all queue', async () => {
    await controller.setKeywordChecked('night', false)
    await controller.playAll()
    expect(controller.state.lastQueue).toEqual(['relaxing', 'march'])
    expect(server.undocumentedCalls()).toEqual([])
  })

  it('service queue matches the UI expected queue', async () => {
    await controller.setKeywordChecked('calm', false)
    await controller.playAll()
    expect(controller.state.lastQueue).toEqual(controller.expectedQueue())
    expect(controller.state.lastQueue).toEqual(['march'])
  })

  it('excluded pieces are marked in the browser model', async () => {
    await controller.setKeywordChecked('calm', false)
    const marks = controller.state.pieces.map((p) => controller.isExcluded(p))
    expect(marks).toEqual([true, true, false])
  })

  it('re-checking a keyword restores the full queue', async () => {
    await controller.setKeywordChecked('calm', false)
    await controller.setKeywordChecked('calm', true)
    await controller.playAll()
    expect(controller.state.lastQueue).toEqual(['relaxing', 'night', 'march'])
  })

  it('unchecking a keyword shared by all pieces empties the queue', async () => {
    server.pieces.get('march')!.keywords.push('calm')
    await controller.load()
    await controller.setKeywordChecked('calm', false)
    await controller.playAll()
    expect(controller.state.lastQueue).toEqual([])
    expect(controller.expectedQueue()).toEqual([])
  })
})
