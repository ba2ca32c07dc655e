import { ApiClient } from './api.js'
import { AppController } from './controller.js'
import { renderApp } from './app.js'

const controller = new AppController(new ApiClient())
renderApp(document.getElementById('app')!, controller)
void controller.load()
void controller.pollStatus()
controller.startPolling(1000)
